from .base import OrthoplexType
from .exceptions import OrthoplexArgumentError


class DimensionTuple(OrthoplexType):
    """
    Non-increasing positive block dimensions ``d_1 >= ... >= d_l``
    summing to ``d``. Block ``i`` of the corresponding code is a
    ``(d_i + 1)``-point regular simplex.
    """
    def __init__(self, parts):
        try:
            parts = [int(p) for p in parts]
        except (TypeError, ValueError) as err:
            raise OrthoplexArgumentError(f"Dimension tuple parts must be integers: {err}")
        self.data = {
            "parts": parts,
            "d": sum(parts),
            "l": len(parts)
        }

    @classmethod
    def parse(cls, text):
        """ Parses the ``3+1+1`` form used in sweep headers and on the command line """
        try:
            return cls(int(p) for p in str(text).split("+"))
        except ValueError:
            raise OrthoplexArgumentError(f"Invalid dimension tuple: {text!r}")

    @property
    def parts(self):
        return tuple(self.data["parts"])

    @property
    def d(self):
        return self.data["d"]

    @property
    def l(self):  # noqa: E743
        return self.data["l"]

    # The entropy properties are None on an empty tuple, which fails rule_nonempty

    @property
    def is_low_entropy(self):
        if self.l == 0:
            return None
        return self.l == 1 or self.parts[1] == 1

    @property
    def is_high_entropy(self):
        if self.l == 0:
            return None
        return self.parts[0] - self.parts[-1] <= 1

    @property
    def low_entropy_p(self):
        return self.parts[0] + 1 if self.l else None

    @property
    def high_entropy_p(self):
        return self.parts[-1] + 1 if self.l else None

    @property
    def block_sizes(self):
        return tuple(p + 1 for p in self.parts)

    def as_string(self):
        return "+".join(str(p) for p in self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return self.l

    def __getitem__(self, idx):
        return self.parts[idx]

    def __eq__(self, other):
        if isinstance(other, DimensionTuple):
            return self.parts == other.parts
        if isinstance(other, (tuple, list)):
            return self.parts == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"{self.__class__.__qualname__}({self.as_string()})"

    def __str__(self):
        return self.as_string()


    """ Validation rules """

    def rule_nonempty(self):
        assert self.l >= 1, "Dimension tuple has no parts"

    def rule_positive_parts(self):
        assert all(p >= 1 for p in self.parts), "Dimension tuple parts must be positive"

    def rule_non_increasing(self):
        parts = self.parts
        assert all(a >= b for a, b in zip(parts, parts[1:])), "Dimension tuple parts must be non-increasing"
