from pydantic import BaseModel, Field
from typing import Optional, Dict, Any

SCHEMA_VERSION = 1


class ReportConfig(BaseModel):
    prime: int = Field(..., description="Prime p of the coefficient field GF(p)")
    mode: str = Field(..., description="Character sweep mode: exhaustive or sample")
    samples: Optional[int] = Field(default=None, description="Number of sampled characters in sample mode")
    seed: Optional[int] = Field(default=None, description="Seed of the sampling generator")
    building: str = Field(..., description="Building-set choice: minimal or maximal")
    compactify: bool = Field(default=False, description="Whether classes at infinity were added")
    degree: Optional[int] = Field(default=None, description="Cohomological degree for charvar")


class ReportEnvelope(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema", description="Report schema version")
    command: str = Field(..., description="Command that produced the report")
    input: Optional[str] = Field(default=None, description="Input file name")
    config: ReportConfig = Field(..., description="Settings that determine the result")
    result: Dict[str, Any] = Field(..., description="Command-specific payload")

    model_config = {"populate_by_name": True}

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True)
