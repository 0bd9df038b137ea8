"""
This file is a collection of the enumerations used throughout orbital_tools.
@author: orbital-measure-tools developers
"""
from enum import Enum, auto


class Space(Enum):
    """
    The symmetric spaces handled: SO_0(p,p)/SO(p)xSO(p) (type D_p), SU(p,p)/S(U(p)xU(p)) and Sp(p,p)/Sp(p)xSp(p)
    (both type C_p). Values are the names accepted by the command line.
    """
    RealD = "real"
    ComplexC = "complex"
    QuaternionC = "quaternion"

    @property
    def field_dim(self) -> int:
        """Real dimension of the base field."""
        return {Space.RealD: 1, Space.ComplexC: 2, Space.QuaternionC: 4}[self]


class RootKind(Enum):
    Diff = "H_i-H_j"
    Sum = "H_i+H_j"
    Double = "2H_k"


class ConfigKind(Enum):
    WithZeros = auto()  # [s;u]
    MinusSingleton = auto()  # [s], last entry -x_r with |x_r| below all other values
    MinusPaired = auto()  # [s]-, last block contains one negated entry


class Rule(Enum):
    Case2p2 = "max(s)+max(t)<=2p-2"
    Case2p = "max(s,2u)+max(t,2v)<=2p"
    ExceptionP4 = "p=4 exceptional pair"
    ZeroElement = "zero element"


class Verdict(Enum):
    Dense = "dense"
    Singular = "singular"


class Mode(Enum):
    Float = "float"
    ExactRational = "exact"


class Marker(Enum):
    check = "check"
    cross = "cross"
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"

    @property
    def symbol(self) -> str:
        """Marker as printed in Markdown tables."""
        return {Marker.check: "√", Marker.cross: "X"}.get(self, f"S_{self.value[1:]}")


class ReportFormat(Enum):
    CSV = "csv"
    JSON = "json"
    Markdown = "md"
    PPTX = "pptx"


class BracketCase(Enum):
    """Index patterns of [Z+_{i,j} + theta(Z+_{i,j}), Z_{k,l}] with i<j, k<l."""
    Disjoint = auto()  # {i,j} and {k,l} disjoint -> 0
    Equal = auto()  # {i,j} = {k,l} -> 4(A_i+A_j)
    SameFirst = auto()  # i=k, j!=l -> 2Y_{min(j,l),max(j,l)}
    SameSecond = auto()  # i!=k, j=l -> 2Y_{min(i,k),max(i,k)}
    ChainJK = auto()  # j=k -> -2Y_{i,l}
    ChainIL = auto()  # i=l -> -2Y_{k,j}
