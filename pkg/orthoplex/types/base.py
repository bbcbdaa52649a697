import json

from abc import ABC
from typing import Dict

from orthoplex.utils import (
    TypeValidator,
    to_jsonable
)


class OrthoplexType(ABC):

    data = TypeValidator()

    def as_dict(self) -> Dict:
        return json.loads(self.as_json())

    def as_json(self) -> str:
        return json.dumps(self.data, default=to_jsonable)

    @property
    def has_warnings(self):
        return hasattr(self, "warnings") and len(self.warnings)
