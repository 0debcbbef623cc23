"""
Configuration settings for AsyncSub
"""

import os
from typing import Dict, Any

try:
    from dotenv import load_dotenv
except ImportError:
    def load_dotenv():
        pass


class ConfigError(ValueError):
    """An environment setting has a malformed value"""


class Config:
    """Configuration class for AsyncSub"""
    
    def __init__(self):
        # Load environment variables
        load_dotenv()
        
        # Subtyping checks
        self.ASYNCSUB_DEFAULT_FUEL = self._count('ASYNCSUB_DEFAULT_FUEL', '100k')
        self.ASYNCSUB_DECIDE_STEP_CEILING = self._count('ASYNCSUB_DECIDE_STEP_CEILING', '0')
        self.ASYNCSUB_ORACLE_PAIR_BOUND = self._count('ASYNCSUB_ORACLE_PAIR_BOUND', '2000')
        self.ASYNCSUB_ORACLE_UNFOLD_BOUND = self._count('ASYNCSUB_ORACLE_UNFOLD_BOUND', '8')
        
        # Automata
        self.ASYNCSUB_CFSM_STATE_CEILING = self._count('ASYNCSUB_CFSM_STATE_CEILING', '100k')
        self.ASYNCSUB_QM_MAX_STEPS = self._count('ASYNCSUB_QM_MAX_STEPS', '1000')
        
        # Logging
        self.LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')
        self.LOG_FILE_PATH = os.getenv('LOG_FILE_PATH', './logs/asyncsub.log')
        self.ENABLE_CONSOLE_LOGGING = os.getenv('ENABLE_CONSOLE_LOGGING', 'True').lower() == 'true'
    
    def _count(self, name: str, default: str) -> int:
        """Read a count setting, naming the variable when its value is malformed"""
        raw = os.getenv(name, default)
        try:
            return self._parse_count(raw)
        except ValueError:
            raise ConfigError(f"{name} must be a count like 100k or 1M, got '{raw}'") from None

    def _parse_count(self, count_str: str) -> int:
        """Parse count string like '100k' or '1M'"""
        count_str = count_str.strip()
        if count_str.endswith('M'):
            return int(count_str[:-1]) * 1000 * 1000
        elif count_str.lower().endswith('k'):
            return int(count_str[:-1]) * 1000
        else:
            return int(count_str)
    
    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary"""
        return {
            'ASYNCSUB_DEFAULT_FUEL': self.ASYNCSUB_DEFAULT_FUEL,
            'ASYNCSUB_DECIDE_STEP_CEILING': self.ASYNCSUB_DECIDE_STEP_CEILING,
            'ASYNCSUB_ORACLE_PAIR_BOUND': self.ASYNCSUB_ORACLE_PAIR_BOUND,
            'ASYNCSUB_ORACLE_UNFOLD_BOUND': self.ASYNCSUB_ORACLE_UNFOLD_BOUND,
            'ASYNCSUB_CFSM_STATE_CEILING': self.ASYNCSUB_CFSM_STATE_CEILING,
            'ASYNCSUB_QM_MAX_STEPS': self.ASYNCSUB_QM_MAX_STEPS,
            'LOG_LEVEL': self.LOG_LEVEL,
            'LOG_FILE_PATH': self.LOG_FILE_PATH,
            'ENABLE_CONSOLE_LOGGING': self.ENABLE_CONSOLE_LOGGING
        }

def load_config() -> Config:
    """Load configuration from environment"""
    return Config()
