import hashlib
import json
from ast import literal_eval


def canonical_json(data):
    """Serialize ``data`` deterministically (sorted keys, fixed separators, trailing newline)"""
    return json.dumps(data, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def dump_json(data, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(canonical_json(data))


def load_json(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def json_sha256(data):
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def file_sha256(path, chunk_size=1 << 20):
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(chunk_size), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _eval(text_value):
    """Trying to evaluate text_value as a python literal"""
    evaluators = (
        literal_eval,
        lambda val: {"true": True, "false": False}[val.lower()],
    )
    for eval_ in evaluators:
        try:
            return eval_(text_value)
        except Exception:
            pass
    return text_value


def parse_key_values(lines):
    """Parse ``key=value`` lines into a dict.

    Examples:
        * 'alpha = 0.1' -> {'alpha': 0.1}
        * 'mode=composite' -> {'mode': 'composite'}
    Blank lines and lines starting with '#' are ignored. Keys are normalized so that
    'gamma-1' and 'gamma_1' are the same key.
    Raises:
        ValueError for a non-blank line without '='
    """
    values = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {number}: expected key=value, got '{line}'")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = _eval(value.strip())
    return values
