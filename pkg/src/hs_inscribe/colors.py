from enum import Enum


class Color(Enum):
    """Edge colour: red joins vertices of one cover cycle, blue joins the two."""

    RED = "r"
    BLUE = "b"


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)
