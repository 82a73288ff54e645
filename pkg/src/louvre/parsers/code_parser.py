"""Parser for polynomials and code definition files."""

import logging
import re

from ..exceptions import CodeParseError
from ..models.code import CodeSpec, GeneratingPolynomial, Monomial

logger = logging.getLogger(__name__)

_FACTOR = re.compile(r"\*?([xy])(?:\^\{?(\d+)\}?)?")
_REQUIRED_KEYS = ("l", "m", "A", "B")
_KNOWN_KEYS = {"name", "l", "m", "A", "B", "boundary"}


class CodeParser:
    """Parser for generating polynomials and ``key=value`` code files."""

    @staticmethod
    def parse_monomial(token: str) -> Monomial:
        """Parse one monomial such as ``1``, ``x``, ``y^2`` or ``x^3y^5``.

        Args:
            token: Monomial text without surrounding ``+``

        Returns:
            The unreduced monomial

        Raises:
            CodeParseError: If the token is malformed
        """
        text = token.strip()
        if text == "1":
            return Monomial(0, 0)
        if not text:
            raise CodeParseError("Empty term in polynomial")

        exponents: dict[str, int] = {}
        pos = 0
        while pos < len(text):
            match = _FACTOR.match(text, pos)
            if not match:
                raise CodeParseError(f"Malformed term {token.strip()!r}")
            symbol, power = match.group(1), match.group(2)
            if symbol in exponents:
                raise CodeParseError(
                    f"Malformed term {token.strip()!r}: {symbol} appears twice"
                )
            exponents[symbol] = int(power) if power is not None else 1
            pos = match.end()
        return Monomial(exponents.get("x", 0), exponents.get("y", 0))

    @staticmethod
    def parse_polynomial(
        text: str, l: int, m: int  # noqa: E741
    ) -> GeneratingPolynomial:
        """Parse a ``+``-separated polynomial and reduce it onto the torus.

        Args:
            text: Polynomial such as ``y+y^2+x^3``
            l: Rows of basic units (y is reduced modulo l)
            m: Columns of basic units (x is reduced modulo m)

        Returns:
            Polynomial with terms in written order

        Raises:
            CodeParseError: On empty input, malformed tokens or duplicate terms
        """
        if not text or not text.strip():
            raise CodeParseError("Polynomial cannot be empty")

        terms: list[Monomial] = []
        for token in text.replace(" ", "").split("+"):
            term = CodeParser.parse_monomial(token).reduced(l, m)
            if term in terms:
                raise CodeParseError(
                    f"Duplicate term {token!r} (reduces to {term.format()})"
                )
            terms.append(term)
        return GeneratingPolynomial(tuple(terms))

    @staticmethod
    def parse_code_text(text: str, source: str = "<string>") -> CodeSpec:
        """Parse the contents of a code definition file.

        Args:
            text: File contents with ``key=value`` lines and ``#`` comments
            source: Name used in error messages

        Returns:
            The parsed code

        Raises:
            CodeParseError: On missing keys or malformed values
        """
        values: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CodeParseError(f"{source}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _KNOWN_KEYS:
                logger.warning("%s:%d: ignoring unknown key %r", source, lineno, key)
                continue
            values[key] = value

        missing = [key for key in _REQUIRED_KEYS if key not in values]
        if missing:
            raise CodeParseError(f"{source}: missing keys: {', '.join(missing)}")

        try:
            l, m = int(values["l"]), int(values["m"])  # noqa: E741
        except ValueError as err:
            raise CodeParseError(f"{source}: l and m must be integers") from err
        if l < 1 or m < 1:
            raise CodeParseError(f"{source}: l and m must be positive")

        try:
            return CodeSpec(
                l=l,
                m=m,
                A=CodeParser.parse_polynomial(values["A"], l, m),
                B=CodeParser.parse_polynomial(values["B"], l, m),
                name=values.get("name", ""),
                boundary=values.get("boundary", "periodic"),
            )
        except CodeParseError as err:
            raise CodeParseError(f"{source}: {err}") from err
        except ValueError as err:
            raise CodeParseError(f"{source}: {err}") from err

    @staticmethod
    def parse_code_file(file_path: str) -> CodeSpec:
        """Parse a code definition file from disk.

        Args:
            file_path: Path to the code file

        Returns:
            The parsed code
        """
        with open(file_path, encoding="utf-8") as f:
            return CodeParser.parse_code_text(f.read(), source=file_path)
