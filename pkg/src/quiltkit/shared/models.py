from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field

# Exact numbers travel as "p/q" strings or plain integers
Number = Union[int, str]
Rows = List[List[Number]]
Ref = Union[int, List[str]]


# Symplectic Linear Algebra
class LagrangianModel(BaseModel):
    """Basis of a Lagrangian subspace, as the rows of a dim x dim/2 matrix"""

    dim: int
    basis: Rows
    form: Optional[Rows] = None


class CorrespondenceModel(BaseModel):
    """Lagrangian correspondence; rows list V0 coordinates first, then V1"""

    source_dim: int
    target_dim: int
    basis: Rows


class LoopModel(BaseModel):
    """Discrete Lagrangian loop for index computations"""

    dim: int
    samples: List[Rows]
    reference: Optional[Rows] = None
    oriented: bool = False


class KashiwaraRequest(BaseModel):
    dim: int
    lagrangians: List[Rows] = Field(min_length=3, max_length=3)


# Quilts
class PatchLabelModel(BaseModel):
    name: str
    dim: int
    form: Optional[Rows] = None


class MarkedPointModel(BaseModel):
    id: str
    dir: Literal["in", "out"]
    width: Number = 1


class CircleModel(BaseModel):
    id: str
    marked: List[MarkedPointModel] = Field(default_factory=list)


class InteriorModel(BaseModel):
    id: str
    dir: Literal["in", "out"]


class PatchModel(BaseModel):
    id: str
    genus: int = 0
    label: PatchLabelModel
    circles: List[CircleModel] = Field(default_factory=list)
    interior: List[InteriorModel] = Field(default_factory=list)


class SeamLabelModel(BaseModel):
    name: str
    dim_pair: Optional[List[int]] = None
    correspondence: Optional[CorrespondenceModel] = None


class SeamModel(BaseModel):
    """Seam between two boundary components; two whole circles expand per interval"""

    a: List[str] = Field(min_length=2, max_length=3)
    b: List[str] = Field(min_length=2, max_length=3)
    align: Optional[List[List[str]]] = None
    label: SeamLabelModel


class BoundaryLabelModel(BaseModel):
    name: str
    lagrangian: Optional[LagrangianModel] = None


class BoundaryEntryModel(BaseModel):
    side: List[str] = Field(min_length=2, max_length=3)
    label: BoundaryLabelModel


class EndOrderModel(BaseModel):
    incoming: List[List[str]] = Field(default_factory=list)
    outgoing: List[List[str]] = Field(default_factory=list)


class QuiltModel(BaseModel):
    """Complete quilted surface definition"""

    modulus: Optional[int] = None
    patches: List[PatchModel] = Field(default_factory=list)
    seams: List[SeamModel] = Field(default_factory=list)
    boundary_labels: List[BoundaryEntryModel] = Field(default_factory=list)
    end_order: EndOrderModel = Field(default_factory=EndOrderModel)


# Graded Algebra
class GeneratorModel(BaseModel):
    name: str
    deg: int


class ModuleModel(BaseModel):
    """Graded free module; modulus and ring fall back to the command defaults"""

    modulus: Optional[int] = None
    ring: Optional[Literal["z", "z2"]] = None
    basis: List[GeneratorModel]


class MapModel(BaseModel):
    source: ModuleModel
    target: ModuleModel
    degree: int
    matrix: List[List[int]]


class ComplexModel(BaseModel):
    module: ModuleModel
    differential: List[List[int]]


# Invariant Engine
class LeafExpr(BaseModel):
    quilt: str


class UnionExpr(BaseModel):
    union: List["ExpressionModel"] = Field(min_length=2, max_length=2)


class GlueExpr(BaseModel):
    glue: "ExpressionModel"
    minus: Ref
    plus: Ref


ExpressionModel = Union[LeafExpr, UnionExpr, GlueExpr]
UnionExpr.model_rebuild()
GlueExpr.model_rebuild()


class AssignedMapModel(BaseModel):
    quilt: str
    matrix: List[List[int]]
    shift: int = 0


class AssignmentModel(BaseModel):
    modulus: Optional[int] = None
    ring: Optional[Literal["z", "z2"]] = None
    modules: Dict[str, ModuleModel] = Field(default_factory=dict)
    maps: List[AssignedMapModel] = Field(default_factory=list)


class EvaluateRequest(BaseModel):
    expression: ExpressionModel
    assignment: AssignmentModel = Field(default_factory=AssignmentModel)

