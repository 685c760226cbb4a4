"""JSON codecs for matrices, modules and pairs, plus fixture manifests."""
import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .exactmath import QParam
from .reports import InputError
from .tetra import GENERATOR_NAMES, GenAssignment

PAIR_KEYS = {
    "inverting": ("K", "Kstar"),
    "tridiagonal": ("A", "Astar"),
}


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON ({e})")
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path: Union[str, Path], obj: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj))
    return path


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with path.open('rb') as f:
        for chunk in iter(lambda: f.read(65536), b''):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(out_dir: Path, paths: Iterable[Path]) -> Path:
    files = [{"file": p.name, "sha256": sha256_file(p)} for p in sorted(paths)]
    return write_json(Path(out_dir) / "manifest.json", {"files": files})


# ---------------------------------------------------------------------------
# codecs


def resolve_q(obj: Dict[str, Any], q: Optional[QParam]) -> QParam:
    """An explicit q wins over the one stored in the file."""
    if q is not None:
        return q
    if "q" in obj:
        return QParam.parse(obj["q"])
    return QParam.from_env()


def matrix_to_json(M: DomainMatrix, q: QParam) -> List[List[str]]:
    return q.format_matrix(M)


def matrix_from_json(rows: Any, q: QParam, name: str = "matrix") -> DomainMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{name}: expected a non-empty array of arrays")
    return la.matrix([[q.parse_scalar(x) for x in row] for row in rows], q.domain)


def module_to_json(A: GenAssignment) -> Dict[str, Any]:
    return {
        "q": A.q.text,
        "dim": A.dim,
        "generators": {name: matrix_to_json(M, A.q) for name, M in A.as_dict().items()},
    }


def module_from_json(obj: Dict[str, Any], q: Optional[QParam] = None) -> GenAssignment:
    q = resolve_q(obj, q)
    gens = obj.get("generators")
    if not isinstance(gens, dict):
        raise InputError("module JSON needs a 'generators' object")
    mats = {name: matrix_from_json(rows, q, name) for name, rows in gens.items()}
    A = GenAssignment.from_mapping(q, mats)
    if "dim" in obj and obj["dim"] != A.dim:
        raise InputError(f"dim {obj['dim']} does not match matrices of size {A.dim}")
    return A


def pair_to_json(q: QParam, X: DomainMatrix, Y: DomainMatrix, kind: str = "inverting") -> Dict[str, Any]:
    first, second = PAIR_KEYS[kind]
    return {"q": q.text, "dim": X.shape[0], first: matrix_to_json(X, q), second: matrix_to_json(Y, q)}


def pair_kind(obj: Dict[str, Any]) -> Optional[str]:
    for kind, keys in PAIR_KEYS.items():
        if all(k in obj for k in keys):
            return kind
    return None


def pair_from_json(obj: Dict[str, Any], q: Optional[QParam] = None
                   ) -> Tuple[str, QParam, DomainMatrix, DomainMatrix]:
    kind = pair_kind(obj)
    if kind is None:
        raise InputError("pair JSON needs 'K'/'Kstar' or 'A'/'Astar'")
    q = resolve_q(obj, q)
    first, second = PAIR_KEYS[kind]
    X, Y = matrix_from_json(obj[first], q, first), matrix_from_json(obj[second], q, second)
    if X.shape != Y.shape or X.shape[0] != X.shape[1]:
        raise InputError(f"pair matrices must be square of equal size, got {X.shape} and {Y.shape}")
    if "dim" in obj and obj["dim"] != X.shape[0]:
        raise InputError(f"dim {obj['dim']} does not match matrices of size {X.shape[0]}")
    return kind, q, X, Y


def is_module_json(obj: Dict[str, Any]) -> bool:
    return isinstance(obj.get("generators"), dict) and set(obj["generators"]) >= set(GENERATOR_NAMES)
