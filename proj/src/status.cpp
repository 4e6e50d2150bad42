#include "framesmith/status.hpp"

namespace framesmith {

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::uncertain: return "uncertain";
    }
    return "unknown";
}

Rational default_tolerance() { return pow(Rational(2), -40); }

Status within_tolerance(const Enclosure& diff, const Rational& tol) {
    if (diff.magnitude() <= tol) return Status::pass;
    if (diff.mignitude() > tol) return Status::fail;
    return Status::uncertain;
}

Status combine(Status a, Status b) {
    if (a == Status::fail || b == Status::fail) return Status::fail;
    if (a == Status::uncertain || b == Status::uncertain) return Status::uncertain;
    return Status::pass;
}

}  // namespace framesmith
