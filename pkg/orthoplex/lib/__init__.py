from .jsontools import OrthoplexJSONEncoder, dump_json_line
