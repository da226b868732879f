"""Per-invocation parameters collected from the command line."""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

Command = Literal["field", "cyclo", "verify", "pds", "scan", "search", "tuples"]

DEFAULT_FORMATS = {
    "field": "tsv",
    "cyclo": "tsv",
    "verify": "json",
    "pds": "json",
    "scan": "tsv",
    "search": "json",
    "tuples": "tsv",
}


class RunConfig(BaseModel):
    """One command and its parameters; mutually exclusive inputs are rejected here."""

    model_config = ConfigDict(extra="forbid")

    command: Command
    p: Optional[int] = Field(default=None, description="Field characteristic")
    m: Optional[int] = Field(default=None, description="Extension degree, or number of sets for search")
    modulus: Optional[List[int]] = Field(default=None, description="Ascending coefficients c0..cm")
    e: Optional[int] = Field(default=None, description="Cyclotomic order")
    group: Optional[List[int]] = Field(default=None, description="Cyclic factors of G")
    sets: Optional[List[List[int]]] = Field(default=None, description="Member ranks per set")
    cyclotomic: bool = False
    certificate: Optional[str] = Field(default=None, description="Certificate stream to re-verify")
    q_max: Optional[int] = None
    m_min: Optional[int] = None
    n_max: Optional[int] = None
    k: Optional[int] = None
    limit: Optional[int] = Field(default=None, ge=1)
    use_automorphisms: bool = False
    table: bool = False
    srg: bool = False
    format: Optional[Literal["tsv", "json"]] = None
    out: Optional[str] = None

    @model_validator(mode="after")
    def check_inputs(self) -> "RunConfig":
        field_given = self.p is not None
        if self.command in ("field", "cyclo") and (self.p is None or self.m is None):
            raise ValueError(f"{self.command} needs -p and -m")
        if self.command == "cyclo" and self.e is None:
            raise ValueError("cyclo needs -e")

        if self.command in ("verify", "pds"):
            sources = [self.sets is not None, self.cyclotomic, self.certificate is not None]
            if sum(sources) != 1:
                raise ValueError("Give exactly one of --sets, --cyclotomic or --certificate")
            if self.certificate is not None and self.command == "pds":
                raise ValueError("--certificate only applies to verify")
            if self.cyclotomic and (self.p is None or self.m is None or self.e is None):
                raise ValueError("--cyclotomic needs -p, -m and -e")
            if self.sets is not None:
                if self.group is not None and field_given:
                    raise ValueError("--group and -p/-m are mutually exclusive")
                if self.group is None and (self.p is None or self.m is None):
                    raise ValueError("--sets needs --group or -p/-m")
            if self.cyclotomic and self.group is not None:
                raise ValueError("--cyclotomic takes its group from -p/-m, not --group")

        if self.command == "search" and (self.group is None or self.m is None or self.k is None):
            raise ValueError("search needs --group, -m and -k")
        if self.command == "tuples" and self.n_max is None:
            raise ValueError("tuples needs --n-max")
        return self

    @property
    def output_format(self) -> str:
        return self.format or DEFAULT_FORMATS[self.command]
