"""
Command handler for the ca REPL and batch commands.

Statements are buffered until a terminating ";" and then executed in order;
lines starting with ":" are meta-commands. Every error becomes a one-line
diagnostic and leaves the session as it was before the failing statement.
"""

import logging
import traceback
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .codegen import emit, lower_program
from .engine import elaborate, evaluate, free_symbols, infer_type, simplify
from .errors import CAError, ParseError, SourcePosition
from .expr import Environment, FreeSymbol
from .laws import check_all_laws, random_samples
from .parser import Binding, Declaration, ExprStatement, Statement, parse_expr, parse_program, parse_type, tokenize
from .printer import print_expr

EXIT_OK = 0
EXIT_DIAGNOSTIC = 1
EXIT_IO = 2


@dataclass
class SessionOptions:
    """Law sampling and output settings of a session."""
    seed: int = 1998
    samples: int = 200
    tuple_limit: int = 4096
    value_range: int = 9
    echo_bindings: bool = True
    indent: int = 2
    number_type: str = "Number"

    @classmethod
    def from_config(cls, config) -> "SessionOptions":
        return cls(
            seed=config.law_settings.seed,
            samples=config.law_settings.samples,
            tuple_limit=config.law_settings.tuple_limit,
            value_range=config.law_settings.value_range,
            echo_bindings=config.repl_settings.echo_bindings,
            indent=config.codegen_settings.indent,
            number_type=config.codegen_settings.number_type,
        )


@dataclass
class Session:
    env: Environment = field(default_factory=Environment)
    options: SessionOptions = field(default_factory=SessionOptions)


@dataclass
class StepResult:
    """Outcome of one REPL line."""
    output: List[str] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)
    pending: bool = False
    done: bool = False


@dataclass
class BatchResult:
    output: List[str] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)
    exit_code: int = EXIT_OK


class CommandHandler:
    def __init__(self, session: Optional[Session] = None, evaluate_statements: bool = True):
        """Initialize CommandHandler"""
        self.logger = logging.getLogger(__name__)
        self.session = session or Session()
        self.evaluate_statements = evaluate_statements
        self._commands: Dict[str, Callable[[str], List[str]]] = {}
        self._command_aliases: Dict[str, str] = {}
        self._buffer: List[str] = []
        self._buffer_start = 1
        self._line_number = 0
        self._line_offsets = False

        self._register_default_commands()
        self._register_command_aliases()

    def _register_default_commands(self):
        """Register meta-command handlers"""
        self._commands.update({
            "type": self._type,
            "eval": self._eval,
            "simplify": self._simplify,
            "free": self._free,
            "emit": self._emit,
            "laws": self._laws,
            "env": self._env,
            "help": self._help,
            "quit": self._quit,
        })

    def _register_command_aliases(self):
        self._command_aliases.update({
            "t": "type",
            "e": "eval",
            "s": "simplify",
            "f": "free",
            "h": "help",
            "q": "quit",
            "exit": "quit",
        })

    @property
    def env(self) -> Environment:
        return self.session.env

    @property
    def pending(self) -> bool:
        return bool(self._buffer)

    # REPL

    def repl_step(self, line: str) -> StepResult:
        """Process one input line."""
        self._line_number += 1
        result = StepResult()
        try:
            if not self._buffer and line.strip().startswith(":"):
                self._run_meta(line.strip()[1:], result)
            else:
                self._feed(line, result)
        except CAError as e:
            self._buffer.clear()
            self._report(e, result)
        except Exception as e:
            self._buffer.clear()
            self.logger.error(f"Error processing input: {e}\n{traceback.format_exc()}")
            result.diagnostics.append(f"internal error: {e}")
        result.pending = bool(self._buffer)
        return result

    def _report(self, error: CAError, result: StepResult):
        if self._line_offsets and error.position is not None:
            error.position = SourcePosition(error.position.line + self._buffer_start - 1, error.position.column)
        self.logger.warning(f"Diagnostic: {error}")
        result.diagnostics.append(f"error: {error}")

    def _run_meta(self, text: str, result: StepResult):
        name, _, argument = text.partition(" ")
        name = name.strip().lower()
        command = self._command_aliases.get(name, name)
        handler = self._commands.get(command)
        if handler is None:
            result.diagnostics.append(f"error: unknown command ':{name}' (try :help)")
            return
        if not self.evaluate_statements and command != "quit":
            self.logger.info(f"Skipping :{command} while checking")
            return
        if command == "quit":
            result.done = True
        result.output.extend(handler(argument.strip()))

    def _feed(self, line: str, result: StepResult):
        if not self._buffer:
            self._buffer_start = self._line_number
        self._buffer.append(line)
        source = "\n".join(self._buffer)
        tokens = tokenize(source)
        if not tokens:
            self._buffer.clear()
            return
        if tokens[-1].text != ";":
            return
        self._buffer.clear()
        for statement in parse_program(source):
            result.output.extend(self.execute(statement))

    def execute(self, statement: Statement) -> List[str]:
        """Run one statement against the session; the environment is replaced only on success."""
        env = self.session.env
        if isinstance(statement, Declaration):
            self.session.env = env.declare(statement.name, statement.type_expr.to_tag())
            return []
        if isinstance(statement, Binding):
            expected = env.declared_tag(statement.name)
            typed = elaborate(statement.expr, env, expected)
            updated = env.bind(statement.name, typed)
            lines = []
            if self.evaluate_statements:
                tag = updated.declared_tag(statement.name)
                value = simplify(evaluate(FreeSymbol(statement.name, tag), updated))
                if self.session.options.echo_bindings:
                    lines.append(f"{statement.name} = {print_expr(value)}")
            self.session.env = updated
            return lines
        typed = elaborate(statement.expr, env)
        if not self.evaluate_statements:
            return []
        return [print_expr(simplify(evaluate(typed, env)))]

    # meta-commands

    def _expression(self, argument: str):
        if not argument:
            raise ParseError("missing expression")
        return elaborate(parse_expr(argument.rstrip(";")), self.env)

    def _type(self, argument: str) -> List[str]:
        if not argument:
            raise ParseError("missing expression")
        tag = infer_type(parse_expr(argument.rstrip(";")), self.env)
        return [f"{tag} ({', '.join(tag.satisfied)})"]

    def _eval(self, argument: str) -> List[str]:
        return [print_expr(evaluate(self._expression(argument), self.env))]

    def _simplify(self, argument: str) -> List[str]:
        return [print_expr(simplify(self._expression(argument)))]

    def _free(self, argument: str) -> List[str]:
        names = sorted(free_symbols(evaluate(self._expression(argument), self.env)))
        return [", ".join(names) if names else "(none)"]

    def _emit(self, argument: str) -> List[str]:
        options = self.session.options
        text = emit(lower_program(self.env, options.number_type), options.indent)
        return text.rstrip("\n").split("\n") if text else []

    def _laws(self, argument: str) -> List[str]:
        if not argument:
            raise ParseError("missing type, e.g. :laws Quaternion")
        return self.law_report(parse_type(argument))[0]

    def law_report(self, tag) -> tuple:
        """Report lines for every claimed law, and whether all of them passed."""
        options = self.session.options
        samples = random_samples(tag, options.samples, options.seed, options.value_range)
        lines, passed = [], True
        for structure, report in check_all_laws(tag, samples, options.tuple_limit, options.seed):
            passed = passed and report.passed
            lines.append(f"{structure}: {report}")
        return lines, passed

    def _env(self, argument: str) -> List[str]:
        lines = []
        bindings = self.env.bindings
        for name, tag in self.env.declarations.items():
            line = f"{name} : {tag}"
            if name in bindings:
                line += f" := {print_expr(bindings[name])}"
            lines.append(line)
        return lines or ["(empty)"]

    def _help(self, argument: str) -> List[str]:
        aliases: Dict[str, List[str]] = {}
        for alias, command in self._command_aliases.items():
            aliases.setdefault(command, []).append(f":{alias}")
        lines = ["statements: NAME : TYPE;  NAME := EXPR;  EXPR;"]
        for command in self._commands:
            extra = f" ({', '.join(aliases[command])})" if command in aliases else ""
            lines.append(f":{command}{extra}")
        return lines

    def _quit(self, argument: str) -> List[str]:
        return []

    # batch

    def run_source(self, source: str) -> BatchResult:
        """Feed a script line by line, stopping at the first diagnostic."""
        self._line_offsets = True
        batch = BatchResult()
        for line in source.split("\n"):
            step = self.repl_step(line)
            batch.output.extend(step.output)
            if step.diagnostics:
                batch.diagnostics.extend(step.diagnostics)
                batch.exit_code = EXIT_DIAGNOSTIC
                return batch
            if step.done:
                return batch
        if self._buffer:
            self._buffer.clear()
            result = StepResult()
            tokens = tokenize(source)
            last = tokens[-1]
            self._line_offsets = False
            self._report(
                ParseError(
                    "unexpected end of input, expected ';'",
                    SourcePosition(last.line, last.column + len(last.text)),
                ),
                result,
            )
            batch.diagnostics.extend(result.diagnostics)
            batch.exit_code = EXIT_DIAGNOSTIC
        return batch

    def _read(self, path: str, batch: BatchResult) -> Optional[str]:
        try:
            text = Path(path).read_text(encoding="utf-8")
            self.logger.info(f"Loaded {path}")
            return text
        except (OSError, UnicodeDecodeError) as e:
            self.logger.error(f"Cannot read {path}: {e}")
            batch.diagnostics.append(f"error: cannot read {path}: {e}")
            batch.exit_code = EXIT_IO
            return None

    def run_file(self, path: str) -> BatchResult:
        failed = BatchResult()
        source = self._read(path, failed)
        return failed if source is None else self.run_source(source)

    def check_file(self, path: str) -> BatchResult:
        """Parse and type-check only."""
        self.evaluate_statements = False
        return self.run_file(path)

    def emit_file(self, path: str, out: Optional[str] = None) -> BatchResult:
        batch = self.check_file(path)
        if batch.exit_code != EXIT_OK:
            return batch
        options = self.session.options
        text = emit(lower_program(self.env, options.number_type), options.indent)
        if out is None:
            batch.output.extend(text.rstrip("\n").split("\n"))
            return batch
        try:
            with open(out, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            self.logger.info(f"Emitted {path} to {out}")
        except OSError as e:
            self.logger.error(f"Cannot write {out}: {e}")
            batch.diagnostics.append(f"error: cannot write {out}: {e}")
            batch.exit_code = EXIT_IO
        return batch

    def laws(self, type_text: str) -> BatchResult:
        batch = BatchResult()
        try:
            lines, passed = self.law_report(parse_type(type_text))
        except CAError as e:
            batch.diagnostics.append(f"error: {e}")
            batch.exit_code = EXIT_DIAGNOSTIC
            return batch
        batch.output.extend(lines)
        if not passed:
            batch.exit_code = EXIT_DIAGNOSTIC
        return batch
