import hashlib


def compute_sha256_from_bytes(data: bytes) -> str:
    """Compute SHA256 hash from bytes."""
    return hashlib.sha256(data).hexdigest()


def compute_sha256_from_string(text: str) -> str:
    """Compute SHA256 hash from string."""
    return compute_sha256_from_bytes(text.encode("utf-8"))


def derive_seed(*parts: object) -> int:
    """Stable 64-bit seed from the given parts, independent of PYTHONHASHSEED."""
    digest = compute_sha256_from_string("/".join(str(part) for part in parts))
    return int(digest[:16], 16)
