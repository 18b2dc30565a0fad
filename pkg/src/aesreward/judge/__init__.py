from .cassette import CassetteMiss, CassetteStore, image_hash, request_key
from .client import HttpTransport, JudgeClient, JudgeEndpoint, JudgeUnreachable
from .replies import (
    AblationScore,
    AgentReply,
    InconsistentTotal,
    JudgeReplyError,
    MalformedReply,
    MIRRORED_VERDICT,
    PairwiseVerdict,
    PointwiseScore,
    UnknownSymbol,
    Verdict,
    parse_ablation,
    parse_agent_reply,
    parse_pairwise,
    parse_pointwise,
)

__all__ = [
    "AblationScore",
    "AgentReply",
    "CassetteMiss",
    "CassetteStore",
    "HttpTransport",
    "InconsistentTotal",
    "JudgeClient",
    "JudgeEndpoint",
    "JudgeReplyError",
    "JudgeUnreachable",
    "MalformedReply",
    "MIRRORED_VERDICT",
    "PairwiseVerdict",
    "PointwiseScore",
    "UnknownSymbol",
    "Verdict",
    "image_hash",
    "parse_ablation",
    "parse_agent_reply",
    "parse_pairwise",
    "parse_pointwise",
    "request_key",
]
