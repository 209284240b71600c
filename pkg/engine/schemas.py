from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Dict, List, Literal, Optional, Tuple

from engine.graph import SignedGraph

BlockKind = Literal["bridge", "cycle", "complex"]
BoundCase = Literal["p_ge_1", "p0_cycle_disjoint", "p0_shared_cycles"]
ExtremalForm = Literal[
    "none",
    "cycles",
    "tree_with_cycles",
    "infty_shared_vertex",
    "theta",
    "leaf_free_tree_with_cycles",
    "bicyclic",
]
RuleName = Literal["pendant_pair_delete", "p6_contract", "pendant_cycle_to_c4", "switch"]
SignMode = Literal["switching_classes", "all_signings", "random"]
Family = Literal[
    "path", "cycle", "infty", "theta", "form1", "coalesce", "path_join", "tree_join", "random"
]


class Block(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...] = Field(..., description="Sorted vertex ids of the block")
    edges: Tuple[Tuple[int, int], ...] = Field(..., description="Sorted (u, v) pairs, u < v")
    kind: BlockKind = Field(..., description="bridge, cycle or complex")


class Cycle(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...] = Field(..., min_length=3, description="v1..vk, closing back to v1")
    sign: int = Field(..., description="Product of the edge signs around the cycle")

    @model_validator(mode="after")
    def _check_sign(self) -> "Cycle":
        if self.sign not in (1, -1):
            raise ValueError(f"cycle sign must be +1 or -1, got {self.sign}")
        return self

    @property
    def length(self) -> int:
        return len(self.vertices)


class StructureSummary(BaseModel):
    omega: int = Field(..., ge=0, description="Number of connected components")
    c: int = Field(..., ge=0, description="Cyclomatic number |E| - |V| + omega")
    p: int = Field(..., ge=0, description="Number of pendant vertices")
    degrees: Tuple[int, ...] = Field(..., description="Degree of every vertex")
    blocks: List[Block] = Field(default_factory=list)
    cycle_disjoint: bool = Field(..., description="No two distinct cycles share a vertex")


class CutVertexStats(BaseModel):
    x: int
    d: int = Field(..., ge=0, description="Degree of x")
    r: int = Field(..., ge=0, description="Components of G - x holding a 2-degree neighbour of x")
    m: int = Field(..., ge=0, description="Number of 2-degree neighbours of x")
    s: int = Field(..., ge=0, description="Number of components of G - x")
    on_cycle: bool


class TreeRecord(BaseModel):
    leaf: int
    major: int
    path: Tuple[int, ...] = Field(..., description="Internal path from the leaf to the major vertex")
    parity: Literal["odd", "even"] = Field(..., description="Parity of the path length")
    covered: bool = Field(..., description="Major vertex covered in the residual tree")


class TreeCertificate(BaseModel):
    records: List[TreeRecord] = Field(default_factory=list)
    direct_verdict: bool = Field(..., description="eta(T) == p(T) - 1 by exact rank")
    recursive_verdict: bool = Field(..., description="Verdict of the leaf-path recursion")
    note: Optional[str] = None

    @property
    def agrees(self) -> bool:
        return self.direct_verdict == self.recursive_verdict


class ReductionStep(BaseModel):
    rule: RuleName
    vertices: Tuple[int, ...] = Field(..., description="Affected vertices, ids before the step")
    eta_before: int
    eta_after: int


class ReductionTrace(BaseModel):
    initial: SignedGraph
    steps: List[ReductionStep] = Field(default_factory=list)
    final: SignedGraph


class BoundVerdict(BaseModel):
    case: BoundCase
    bound: int
    eta: int
    slack: int

    model_config = ConfigDict(
        json_schema_extra={"example": {"case": "p0_shared_cycles", "bound": 3, "eta": 3, "slack": 0}}
    )


class InftyShape(BaseModel):
    p: int = Field(..., ge=3, description="Length of the first cycle")
    q: int = Field(..., ge=3, description="Length of the second cycle")
    l: int = Field(..., ge=1, description="Order of the connecting path (1 = shared vertex)")
    cycles: Tuple[Cycle, Cycle]


class ThetaShape(BaseModel):
    lengths: Tuple[int, int, int] = Field(..., description="Lengths of the three internally disjoint paths")
    ends: Tuple[int, int] = Field(..., description="The two degree-3 vertices")
    cycles: Tuple[Cycle, Cycle, Cycle] = Field(
        ..., description="Cycles on paths (0, 1), (1, 2) and (0, 2)"
    )


class Witness(BaseModel):
    tree: Optional[SignedGraph] = Field(None, description="Tree left after contracting pendant cycles")
    attachments: Tuple[int, ...] = Field(default=(), description="Cycle attachment vertices (graph ids)")
    cycles: Tuple[Cycle, ...] = Field(default=())
    infty: Optional[InftyShape] = None
    theta: Optional[ThetaShape] = None
    third_cycle_nullity: Optional[int] = None


class ClassificationResult(BaseModel):
    verdict: BoundVerdict
    extremal_form: ExtremalForm = "none"
    witness: Optional[Witness] = None


class FamilySpec(BaseModel):
    family: Family
    params: Dict[str, str] = Field(default_factory=dict)

    model_config = ConfigDict(
        json_schema_extra={"example": {"family": "theta", "params": {"p": "4", "q": "4", "l": "4", "signs": "++"}}}
    )


class Universe(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_n: int = Field(..., ge=2, description="Largest vertex count enumerated")
    min_n: int = Field(2, ge=1, description="Smallest vertex count enumerated")
    connected: bool = Field(True, description="Only connected underlying graphs")
    sign_mode: SignMode = "switching_classes"
    samples: Optional[int] = Field(None, ge=1, description="Sample count in random mode")
    seed: Optional[int] = None
    dedupe: bool = Field(False, description="Drop isomorphic underlying graphs")

    @model_validator(mode="after")
    def _check_mode(self) -> "Universe":
        if self.min_n > self.max_n:
            raise ValueError("min_n must not exceed max_n")
        if self.sign_mode == "random" and (self.samples is None or self.seed is None):
            raise ValueError("random sign mode needs samples and seed")
        return self


class PropertyResult(BaseModel):
    name: str
    checked: int = 0
    violations: int = 0
    equality_cases: int = 0
    counterexamples: List[str] = Field(default_factory=list)


class VerificationReport(BaseModel):
    universe: Universe
    properties: List[PropertyResult] = Field(default_factory=list)
    total_checked: int = 0
    total_violations: int = 0
    wall_time: float = Field(0.0, ge=0.0, description="Seconds spent, excluded from comparisons")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "universe": {"max_n": 5},
                "properties": [{"name": "nullity_upper_bound", "checked": 3690, "violations": 0}],
                "total_checked": 3690,
                "total_violations": 0,
                "wall_time": 4.2,
            }
        }
    )
