"""
Known-answer test files
=======================

Line-oriented ASCII hex, LF-terminated, in the NIST PQC style:

    # rdmpf KAT
    # profile = toy-997
    # height = 4
    # master = <hex>

    count = 0
    seed = <hex>
    pk = <hex>
    sk = <hex>
    ct = <hex>
    ss = <hex>
    msg = <hex>
    sig = <hex>

Every field of a vector is a function of its seed; seeds come from the master
seed, so a pinned master regenerates the file bit for bit.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, List, Tuple

from . import codec, dsa, kem
from .errors import FramingError
from .hashing import xof
from .params import Params, get_profile

logger = logging.getLogger(__name__)

FIELDS = ("seed", "pk", "sk", "ct", "ss", "msg", "sig")
MESSAGE_STEP = 33


@dataclass(frozen=True)
class KatVector:
    count: int
    seed: bytes
    pk: bytes
    sk: bytes
    ct: bytes
    ss: bytes
    msg: bytes
    sig: bytes


@dataclass
class KatCheckResult:
    checked: int
    mismatches: List[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def vector_seed(master: bytes, count: int) -> bytes:
    return xof(b"kat", master + count.to_bytes(4, "big"), 256)


def generate_vector_from_seed(seed: bytes, count: int, params: Params, height: int) -> KatVector:
    pk, sk = kem.keygen(seed, params)
    coins = xof(b"kat", seed + b"coins", params.kappa)
    ct, ss = kem.encaps(pk, coins)

    msg = xof(b"kat", seed + b"msg", MESSAGE_STEP * (count + 1) * 8)
    _, sk_ds = dsa.keygen_ds(seed, height=height)
    sig = dsa.sign_ds(sk_ds, msg)

    return KatVector(
        count=count,
        seed=seed,
        pk=pk.encoded,
        sk=codec.encode_sk(sk),
        ct=ct.to_bytes(),
        ss=ss,
        msg=msg,
        sig=codec.encode_sig(sig),
    )


def _generate_one(args: Tuple[bytes, int, Params, int]) -> KatVector:
    master, count, params, height = args
    return generate_vector_from_seed(vector_seed(master, count), count, params, height)


def generate_kat(master: bytes, count: int, params: Params, height: int,
                 workers: int = 1) -> List[KatVector]:
    """Vectors 0..count-1; seeds are independent so workers > 1 fans out to processes"""
    jobs = [(master, i, params, height) for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            vectors = list(pool.map(_generate_one, jobs))
    else:
        vectors = [_generate_one(job) for job in jobs]
    logger.info("Generated %d KAT vectors for %s", len(vectors), params.name)
    return vectors


def format_kat(vectors: List[KatVector], params: Params, height: int, master: bytes) -> str:
    lines = [
        "# rdmpf KAT",
        f"# profile = {params.name}",
        f"# height = {height}",
        f"# master = {master.hex()}",
        "",
    ]
    for vec in vectors:
        lines.append(f"count = {vec.count}")
        for name in FIELDS:
            lines.append(f"{name} = {getattr(vec, name).hex()}")
        lines.append("")
    return "\n".join(lines) + "\n"


def parse_kat(text: str) -> Tuple[Dict[str, str], List[KatVector]]:
    """Header fields and vectors of a KAT file"""
    header: Dict[str, str] = {}
    vectors: List[KatVector] = []
    current: Dict[str, object] = {}

    def flush():
        if current:
            missing = [f for f in ("count",) + FIELDS if f not in current]
            if missing:
                raise FramingError(f"KAT vector missing fields: {', '.join(missing)}")
            vectors.append(KatVector(**current))
            current.clear()

    for raw in text.split("\n"):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if "=" in line:
                key, value = line[1:].split("=", 1)
                header[key.strip()] = value.strip()
            continue
        if "=" not in line:
            raise FramingError(f"Malformed KAT line: {line[:60]}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "count":
            flush()
            current["count"] = int(value)
        elif key in FIELDS:
            try:
                current[key] = bytes.fromhex(value)
            except ValueError as e:
                raise FramingError(f"Bad hex in field {key}: {e}") from e
        else:
            raise FramingError(f"Unknown KAT field: {key}")
    flush()

    for key in ("profile", "height", "master"):
        if key not in header:
            raise FramingError(f"KAT header missing '{key}'")
    return header, vectors


def check_kat(text: str) -> KatCheckResult:
    """Regenerate every vector from its seed and compare byte for byte"""
    header, vectors = parse_kat(text)
    params = get_profile(header["profile"])
    height = int(header["height"])
    master = bytes.fromhex(header["master"])

    mismatches = []
    for vec in vectors:
        if vec.seed != vector_seed(master, vec.count):
            mismatches.append(f"count {vec.count}: seed does not follow the master seed")
        fresh = generate_vector_from_seed(vec.seed, vec.count, params, height)
        for name, value in asdict(fresh).items():
            if getattr(vec, name) != value:
                mismatches.append(f"count {vec.count}: field '{name}' differs")

        # functional checks on the stored bytes
        sk = codec.decode_sk(vec.sk, params)
        if kem.decaps(sk, codec.decode_ct(vec.ct, params)) != vec.ss:
            mismatches.append(f"count {vec.count}: decaps(sk, ct) != ss")
        pk_ds, sk_ds = dsa.keygen_ds(vec.seed, height=height)
        outcome = dsa.verify_ds(pk_ds, vec.msg, vec.sig, dsa.VerifierContext.from_secret(sk_ds))
        if not outcome.accepted:
            mismatches.append(f"count {vec.count}: signature rejected")

    for line in mismatches:
        logger.warning("KAT mismatch: %s", line)
    return KatCheckResult(checked=len(vectors), mismatches=mismatches)
