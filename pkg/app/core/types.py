import re
import sys
from typing import Annotated

if sys.version_info >= (3, 12):
    from typing import TypeAliasType
else:
    from typing_extensions import TypeAliasType

from pydantic import AfterValidator, BaseModel, Field


class Base(BaseModel):
    model_config = {
        "from_attributes": True,
        "populate_by_name": True,
        "validate_default": True,
        "extra": "forbid",
    }


class FrozenBase(Base):
    model_config = {**Base.model_config, "frozen": True}


class PauliLabelValidator:
    """Signed Pauli text such as "+XIZY", "-iXZ" or "ZZI" (leftmost letter is qubit 0)."""

    regex = re.compile(r"^[+-]?i?[IXYZ]+$")

    @classmethod
    def validate(cls, v):
        if not isinstance(v, str):
            raise TypeError("String required")
        if not cls.regex.fullmatch(v):
            raise ValueError("Invalid Pauli string format")
        return v


PauliLabel = TypeAliasType("PauliLabel", Annotated[str, AfterValidator(PauliLabelValidator.validate)])

# numpy SeedSequence accepts any non-negative int; the CLI promises u64
Seed = TypeAliasType("Seed", Annotated[int, Field(ge=0, lt=2**64)])

Quarter = TypeAliasType("Quarter", Annotated[int, Field(ge=0, le=3)])
