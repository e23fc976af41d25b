"""Random Mixer Script generation and corruption for property tests."""

import random

from sonicmix.lang import METHODS, Arg, EffectOp, ScriptAST, Track
from sonicmix.lang.ast import REQUIRED_ARGS

ASSET_CHARS = "abcdefghijklmnopqrstuvwxyz0123456789_- ."


def random_number(rng: random.Random) -> float:
    # at most six significant digits, so the canonical numeral is exact
    mantissa = rng.randint(0, 999999)
    scale = 10 ** rng.randint(0, 5)
    sign = rng.choice((1, -1))
    return float(f"{sign * mantissa / scale:.{len(str(scale)) - 1}f}")


def random_asset(rng: random.Random) -> str:
    if rng.random() < 0.5:
        head = rng.choice("abcdefghijklmnopqrstuvwxyz_")
        return head + "".join(rng.choice("abcdefghijklmnopqrstuvwxyz0123456789_") for _ in range(rng.randint(0, 12)))
    name = "".join(rng.choice(ASSET_CHARS) for _ in range(rng.randint(1, 16)))
    return name if name.strip() else "x" + name


def random_op(rng: random.Random) -> EffectOp:
    method = rng.choice(list(METHODS))
    n = rng.randint(REQUIRED_ARGS[method], len(METHODS[method]))
    return EffectOp(method, tuple(Arg(random_number(rng)) for _ in range(n)))


def random_ast(rng: random.Random) -> ScriptAST:
    return ScriptAST(tuple(
        Track(random_asset(rng), tuple(random_op(rng) for _ in range(rng.randint(0, 6))))
        for _ in range(rng.randint(1, 6))
    ))


def random_source(rng: random.Random, ast: ScriptAST) -> str:
    """Non-canonical but equivalent source: names, spacing, comments, semicolons."""
    lines = []
    for track in ast.tracks:
        asset = track.asset_ref
        is_ident = asset.replace("_", "a").isalnum() and not asset[0].isdigit()
        text = asset if is_ident and rng.random() < 0.5 else f'"{asset}"'
        for op in track.chain:
            params = METHODS[op.method]
            parts = []
            named = False
            for name, arg in zip(params, op.args):
                named = named or rng.random() < 0.3
                num = repr(arg.value) if "e" not in repr(arg.value) else f"{arg.value:f}"
                parts.append(f"{name} = {num}" if named else num)
            if named:
                # named args may come in any order once positional ones are done
                first_named = next(i for i, p in enumerate(parts) if "=" in p)
                tail = parts[first_named:]
                rng.shuffle(tail)
                parts = parts[:first_named] + tail
            sep = rng.choice((",", ", ", " ,  "))
            text += f"{rng.choice(('', ' '))}.{op.method}({sep.join(parts)})"
        if rng.random() < 0.3:
            text += ";"
        if rng.random() < 0.3:
            text += "  # note"
        lines.append(text)
        if rng.random() < 0.2:
            lines.append(rng.choice(("", "   ", "# comment line")))
    return "\n".join(lines) + rng.choice(("", "\n"))


def _corrupt_number(rng):
    return rng.choice(("1e5", "1.", ".5", "1.2.3", "--3", "0x10", "1,5.", "12abc", "+-1"))


MUTATIONS = (
    "unknown_method",
    "lowercase_method",
    "unterminated_string",
    "drop_rparen",
    "bad_number",
    "extra_arg",
    "missing_arg",
    "illegal_char",
    "bad_param_name",
    "dangling_dot",
    "empty_script",
)


def corrupt(rng: random.Random, ast: ScriptAST, formatted: str) -> tuple[str, str]:
    """Return (mutation kind, corrupted source) that is guaranteed invalid."""
    lines = formatted.rstrip("\n").split("\n")
    i = rng.randrange(len(lines))
    track = ast.tracks[i]
    line = lines[i]
    kind = rng.choice(MUTATIONS)
    if kind in ("unknown_method", "lowercase_method", "drop_rparen", "bad_number", "extra_arg",
                "missing_arg", "bad_param_name") and not track.chain:
        kind = "dangling_dot"
    if kind == "unknown_method":
        op = rng.choice(track.chain)
        bogus = rng.choice(("Delay", "Chorus", "Gain", "PitchShift", "volume_", "Reverb2"))
        line = line.replace(f".{op.method}(", f".{bogus}(", 1)
    elif kind == "lowercase_method":
        op = rng.choice(track.chain)
        line = line.replace(f".{op.method}(", f".{op.method.lower()}(", 1)
    elif kind == "unterminated_string":
        line = '"' + line[1:].replace('"', "", 1)
    elif kind == "drop_rparen":
        j = line.rfind(")")
        line = line[:j] + line[j + 1 :]
    elif kind == "bad_number":
        j = line.index("(") + 1
        k = min(p for p in (line.find(",", j), line.find(")", j)) if p >= 0)
        if k == j:  # no args; put one in that is malformed
            line = line[:j] + _corrupt_number(rng) + line[j:]
        else:
            line = line[:j] + _corrupt_number(rng) + line[k:]
    elif kind == "extra_arg":
        op = track.chain[0]
        extra = ", 1" * (len(METHODS[op.method]) - len(op.args) + 1)
        j = line.index(")")
        line = line[:j] + ("1" + extra[1:] if not op.args else extra) + line[j:]
        line = line.replace("(,", "(", 1)
    elif kind == "missing_arg":
        j = line.index("(")
        k = line.index(")")
        line = line[: j + 1] + line[k:]
        if REQUIRED_ARGS[track.chain[0].method] == 0:
            line = line + ".Nope()"
    elif kind == "illegal_char":
        j = rng.randrange(1, len(line) + 1)
        line = line[:j] + rng.choice("@$%&!?[]{}'\\") + line[j:]
        if line.count('"') == 2 and line.index('"') < j < line.rindex('"'):
            line = line + " @"  # inside the quoted asset name it is legal; add one outside
    elif kind == "bad_param_name":
        j = line.index("(") + 1
        line = line[:j] + "bogus=1, " + line[j:]
    elif kind == "dangling_dot":
        line = line + "."
    elif kind == "empty_script":
        return kind, rng.choice(("", "\n\n", "# only a comment\n", "   \n"))
    lines[i] = line
    return kind, "\n".join(lines) + "\n"
