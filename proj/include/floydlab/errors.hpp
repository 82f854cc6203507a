#pragma once

#include <stdexcept>
#include <string>

namespace floydlab {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define FLOYDLAB_ERROR(Name)                                   \
    class Name : public Error {                                \
    public:                                                    \
        explicit Name(const std::string& what) : Error(what) {} \
    }

FLOYDLAB_ERROR(DomainError);
FLOYDLAB_ERROR(EvalError);
FLOYDLAB_ERROR(SingularError);
FLOYDLAB_ERROR(OverflowError);
FLOYDLAB_ERROR(QuadratureError);
FLOYDLAB_ERROR(StepError);
FLOYDLAB_ERROR(BracketError);
FLOYDLAB_ERROR(EigenvalueError);
FLOYDLAB_ERROR(UnwrapError);
FLOYDLAB_ERROR(NoLevelError);
FLOYDLAB_ERROR(ConfigError);
FLOYDLAB_ERROR(IoError);

#undef FLOYDLAB_ERROR

}  // namespace floydlab
