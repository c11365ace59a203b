"""Helper methods.

ParseError : malformed textual or document input
ValidationError : violated precondition of a domain operation
check_verify_env : check env for verify bound overrides
VerifyBounds : desk-scale bounds used by the verify suites
load_document : read a JSON input document
check_document : check a document carries the expected keys
parse_window : parse a --vars lo..hi window
frame_to_text : render a machine-format DataFrame

"""

import os
import json
from dataclasses import dataclass, fields, replace
from typing import Tuple, Union
import pandas as pd


class ParseError(ValueError):
    """Malformed textual or document input."""


class ValidationError(ValueError):
    """Violated precondition of a domain operation."""


ENV_VERIFY = "FLAGGED_SLIDES_VERIFY"


def check_verify_env() -> str:
    """Return the verify override string from env, empty when unset."""
    try:
        return os.environ[ENV_VERIFY]
    except KeyError:
        return ""


@dataclass(frozen=True)
class VerifyBounds:
    """Bounds for the invariant suites run by verify.

    Attributes
    ----------
    weight : int
        Max weight of N-vectors in basis and back-slide suites
    posets : int
        Number of generated flagged posets
    poset_size : int
        Max number of elements of a generated poset
    flag_max : int
        Max flag value of a generated poset
    pairs : int
        Number of random back-slide product pairs
    samples : int
        Number of sampled elements in the stabilization suite
    seed : int
        Seed for every random generator
    procs : int
        Number of worker processes

    """

    weight: int = 4
    posets: int = 200
    poset_size: int = 6
    flag_max: int = 5
    pairs: int = 50
    samples: int = 20
    seed: int = 0
    procs: int = 4

    @classmethod
    def from_env(cls) -> "VerifyBounds":
        """Build bounds from defaults and FLAGGED_SLIDES_VERIFY."""
        return cls().override(check_verify_env())

    def override(self, spec: str) -> "VerifyBounds":
        """Return bounds updated by "key=value,key=value"."""
        if not spec.strip():
            return self
        known = {x.name for x in fields(self)}
        updates = {}
        for item in spec.split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in known:
                raise ValidationError(
                    f"Unexpected {ENV_VERIFY} entry : {item.strip()}"
                )
            try:
                updates[key] = int(value)
            except ValueError as e:
                raise ValidationError(
                    f"Expected integer for {key} : {value}"
                ) from e
            if updates[key] < 0:
                raise ValidationError(f"Expected nonnegative {key}")
        return replace(self, **updates)


def load_document(doc_path: Union[str, os.PathLike]) -> dict:
    """Read and return a JSON input document."""
    if not os.path.exists(doc_path):
        raise FileNotFoundError(f"Missing : {doc_path}")
    with open(doc_path) as doc_f:
        try:
            doc = json.load(doc_f)
        except json.JSONDecodeError as e:
            raise ParseError(f"Invalid JSON in {doc_path} : {e.msg}") from e
    if not isinstance(doc, dict):
        raise ParseError(f"Expected a JSON object in {doc_path}")
    return doc


def check_document(doc: dict, keys: Tuple[str, ...], kind: str):
    """Check that doc has every key in keys."""
    missing = [x for x in keys if x not in doc]
    if missing:
        raise ParseError(f"Missing {kind} keys : {', '.join(missing)}")


def parse_window(text: str) -> Tuple[int, int]:
    """Parse "lo..hi" into an integer window."""
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        window = (int(lo), int(hi))
    except ValueError as e:
        raise ParseError(f"Expected window lo..hi : {text}") from e
    if window[0] > window[1]:
        raise ValidationError(f"Empty window : {text}")
    return window


def frame_to_text(df: pd.DataFrame) -> str:
    """Return machine-format CSV text of df."""
    return df.to_csv(index=False, lineterminator="\n")
