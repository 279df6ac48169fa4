"""
Main entry point for the ca computer-algebra kernel.

    ca repl
    ca run FILE
    ca check FILE
    ca emit FILE [-o OUT]
    ca laws TYPE [--seed N]
"""

import argparse
import logging
import sys
import traceback
from typing import List, Optional

from config.settings import ConfigManager
from core.command_handler import EXIT_DIAGNOSTIC, BatchResult, CommandHandler, Session, SessionOptions
from ui.display import ConsoleDisplay

logger = logging.getLogger(__name__)


def setup_logging(settings, level_override: Optional[str] = None):
    """Root logger: stderr plus optional detail and error files."""
    level = getattr(logging, (level_override or settings.level).upper(), logging.WARNING)
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.file:
        handlers.append(logging.FileHandler(settings.file, encoding="utf-8", mode="w"))
    logging.basicConfig(level=level, format=settings.format, handlers=handlers, force=True)

    if settings.error_file:
        error_handler = logging.FileHandler(settings.error_file, encoding="utf-8", mode="w")
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(logging.Formatter(settings.format))
        logging.getLogger().addHandler(error_handler)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ca", description="Typed computer-algebra kernel")
    parser.add_argument("--log-level", help="override the configured log level")
    parser.add_argument("--config", help="path to an alternative config.yaml")
    commands = parser.add_subparsers(dest="command")

    commands.add_parser("repl", help="interactive session")

    run = commands.add_parser("run", help="execute a program and print its results")
    run.add_argument("file")

    check = commands.add_parser("check", help="parse and type-check a program")
    check.add_argument("file")

    emit = commands.add_parser("emit", help="lower a program to OOP class declarations")
    emit.add_argument("file")
    emit.add_argument("-o", "--output", help="write to this path instead of stdout")

    laws = commands.add_parser("laws", help="check every law a carrier claims")
    laws.add_argument("type", help="carrier type, e.g. Quaternion or 'Matrix(Rational, 2)'")
    laws.add_argument("--seed", type=int, help="sampling seed")
    return parser


class CaApp:
    def __init__(self, args: argparse.Namespace):
        try:
            self.args = args
            self.config = ConfigManager(args.config)
            setup_logging(self.config.logging_settings, args.log_level)
            logger.debug("Configuration manager initialized")

            self.setup_components()
        except Exception as e:
            logger.critical(f"Fatal error during initialization: {e}\n{traceback.format_exc()}")
            raise

    def setup_components(self):
        """Initialize session, command handler and display"""
        options = SessionOptions.from_config(self.config)
        if self.args.command == "run":
            options.echo_bindings = False
        if self.args.command == "laws" and self.args.seed is not None:
            options.seed = self.args.seed
        self.command_handler = CommandHandler(Session(options=options))
        self.display = ConsoleDisplay(color=self.config.repl_settings.color)
        logger.debug("Command handler initialized")

    def show(self, batch: BatchResult) -> int:
        for line in batch.output:
            self.display.log_message(line)
        for line in batch.diagnostics:
            self.display.log_message(line, "error")
        return batch.exit_code

    def run(self) -> int:
        command = self.args.command or "repl"
        logger.info(f"Starting ca {command}")
        if command == "repl":
            return self.run_repl()
        if command == "run":
            return self.show(self.command_handler.run_file(self.args.file))
        if command == "check":
            return self.show(self.command_handler.check_file(self.args.file))
        if command == "emit":
            return self.show(self.command_handler.emit_file(self.args.file, self.args.output))
        return self.show(self.command_handler.laws(self.args.type))

    def run_repl(self) -> int:
        settings = self.config.repl_settings
        self.display.log_message("ca computer-algebra kernel; :help lists commands", "hint")
        while True:
            prompt = settings.continuation_prompt if self.command_handler.pending else settings.prompt
            line = self.display.read_line(prompt)
            if line is None:
                break
            result = self.command_handler.repl_step(line)
            for text in result.output:
                self.display.log_message(text)
            for text in result.diagnostics:
                self.display.log_message(text, "error")
            if result.done:
                break
        logger.info("Session ended")
        return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return CaApp(args).run()
    except KeyboardInterrupt:
        return 0
    except Exception as e:
        logger.critical(f"Fatal error: {e}\n{traceback.format_exc()}")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_DIAGNOSTIC


if __name__ == "__main__":
    sys.exit(main())
