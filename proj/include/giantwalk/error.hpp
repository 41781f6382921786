#pragma once

#include <stdexcept>
#include <string>

namespace giantwalk {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define GIANTWALK_ERROR(Name)                                              \
    struct Name : Error {                                                  \
        explicit Name(const std::string& what = #Name) : Error(what) {}    \
    }

GIANTWALK_ERROR(DuplicateEdge);
GIANTWALK_ERROR(SelfLoop);
GIANTWALK_ERROR(DanglingVertexId);
GIANTWALK_ERROR(EmptySourceSet);
GIANTWALK_ERROR(Disconnected);
GIANTWALK_ERROR(NonPositiveEpsilon);
GIANTWALK_ERROR(RngExhausted);
GIANTWALK_ERROR(PairingBudgetExceeded);
GIANTWALK_ERROR(InfeasibleDegreeSequence);
GIANTWALK_ERROR(MuOutOfRange);
GIANTWALK_ERROR(GammaOutOfRange);
GIANTWALK_ERROR(SolveDiverged);
GIANTWALK_ERROR(TooLarge);
GIANTWALK_ERROR(FactorizationFailed);
GIANTWALK_ERROR(DominationViolated);
GIANTWALK_ERROR(NotPSD);
GIANTWALK_ERROR(StepBudgetExceeded);
GIANTWALK_ERROR(MissingProvenance);
GIANTWALK_ERROR(RecursionStuck);
GIANTWALK_ERROR(BudgetViolation);
GIANTWALK_ERROR(ConfigInvalid);
GIANTWALK_ERROR(StageFailed);
GIANTWALK_ERROR(ParseError);

#undef GIANTWALK_ERROR

} // namespace giantwalk
