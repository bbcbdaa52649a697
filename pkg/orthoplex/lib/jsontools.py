import json

from orthoplex.types.base import OrthoplexType
from orthoplex.utils import to_jsonable


class OrthoplexJSONEncoder(json.JSONEncoder):
    def default(self, inst):
        if isinstance(inst, OrthoplexType):
            return inst.data

        try:
            return to_jsonable(inst)
        except TypeError:
            return json.JSONEncoder.default(self, inst)


def dump_json_line(obj) -> str:
    """ Compact single-line JSON, as written to stdout by the cli """
    return json.dumps(obj, cls=OrthoplexJSONEncoder, separators=(",", ":"))
