"""Exception hierarchy shared by every cmlinv module.

Each error carries a short ``code`` and free-form ``details`` so the CLI can
print a structured error record instead of a traceback.
"""
from typing import Any, Dict


class CMLInvError(Exception):
    code = "error"

    def __init__(self, message: str = "", **details: Any):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "message": self.message, "details": self.details}


# padic
class ZeroInput(CMLInvError):
    code = "zero_input"

class NonUnit(CMLInvError):
    code = "non_unit"

class OddValuation(CMLInvError):
    code = "odd_valuation"

class NonResidue(CMLInvError):
    code = "non_residue"

class EvenCharacteristic(CMLInvError):
    code = "even_characteristic"

class DivisibleOrder(CMLInvError):
    code = "divisible_order"

class NotPrincipalUnit(CMLInvError):
    code = "not_principal_unit"

class PrecisionLoss(CMLInvError):
    code = "precision_loss"

class DenominatorAtP(CMLInvError):
    code = "denominator_at_p"


# quadfield
class NonFundamental(CMLInvError):
    code = "non_fundamental"

class SearchExhausted(CMLInvError):
    code = "search_exhausted"

class NotPrincipal(CMLInvError):
    code = "not_principal"


# cmfield
class InadmissibleSetting(CMLInvError):
    code = "inadmissible_setting"

class PrecisionRounding(CMLInvError):
    code = "precision_rounding"

class AmbiguousMatching(CMLInvError):
    code = "ambiguous_matching"

class UnsupportedCase(CMLInvError):
    code = "unsupported_case"


# linv
class ZeroTargetValuation(CMLInvError):
    code = "zero_target_valuation"

class InconsistentWitnesses(CMLInvError):
    code = "inconsistent_witnesses"

class DegenerateLog(CMLInvError):
    code = "degenerate_log"

class GenericCMViolated(CMLInvError):
    code = "generic_cm_violated"


# qexp
class RelationViolated(CMLInvError):
    code = "relation_violated"


# galois
class IllDefinedCocycleValue(CMLInvError):
    code = "ill_defined_cocycle_value"

class DegenerateConfiguration(CMLInvError):
    code = "degenerate_configuration"

class MembershipViolated(CMLInvError):
    code = "membership_violated"


# cache / cli
class CacheCorrupted(CMLInvError):
    code = "cache_corrupted"

class VerificationFailed(CMLInvError):
    code = "verification_failed"
