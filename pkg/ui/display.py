"""
Terminal output for the ca REPL and batch commands, colored with colorama.
"""

import logging
import sys
import traceback
from typing import Optional, TextIO

import colorama
from colorama import Fore, Style

logger = logging.getLogger(__name__)


class ConsoleDisplay:
    """Results go to stdout, diagnostics to stderr."""

    LEVEL_COLORS = {
        "info": "",
        "success": Fore.GREEN,
        "warning": Fore.YELLOW,
        "error": Fore.RED,
        "hint": Fore.CYAN,
    }

    def __init__(self, color: bool = True, out: Optional[TextIO] = None, err: Optional[TextIO] = None):
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.color = color and hasattr(self.out, "isatty") and self.out.isatty()
        if self.color:
            colorama.just_fix_windows_console()

    def log_message(self, message: str, level: str = "info"):
        """Print one message; warnings and errors go to stderr."""
        try:
            stream = self.err if level in ("warning", "error") else self.out
            color = self.LEVEL_COLORS.get(level, "")
            text = f"{color}{message}{Style.RESET_ALL}" if self.color and color else message
            print(text, file=stream, flush=True)
            logger.debug(f"[{level}] {message}")
        except Exception as e:
            logger.error(f"Error logging message: {e}\n{traceback.format_exc()}")

    def read_line(self, prompt: str) -> Optional[str]:
        """One line of input, or None at end of input."""
        try:
            return input(prompt)
        except EOFError:
            return None
