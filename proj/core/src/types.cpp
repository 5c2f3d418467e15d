#include "agentmem/types.hpp"

#include <cmath>

namespace agentmem {

std::string to_string(Domain d) {
    switch (d) {
    case Domain::code: return "code";
    case Domain::math: return "math";
    case Domain::qa: return "qa";
    }
    return "code";
}

std::string to_string(Mode m) {
    switch (m) {
    case Mode::base: return "base";
    case Mode::reflexion: return "reflexion";
    case Mode::dot: return "dot";
    case Mode::dot_bank: return "dot_bank";
    case Mode::paramagent: return "paramagent";
    case Mode::paramagent_plus: return "paramagent_plus";
    case Mode::parametric_only: return "parametric_only";
    }
    return "base";
}

std::string to_string(ReflectionSource s) {
    switch (s) {
    case ReflectionSource::self: return "self";
    case ReflectionSource::parametric: return "parametric";
    case ReflectionSource::prompt_variant: return "prompt_variant";
    }
    return "self";
}

Domain domain_from_string(const std::string& s) {
    if (s == "code") return Domain::code;
    if (s == "math") return Domain::math;
    if (s == "qa") return Domain::qa;
    throw ParseError("unknown domain: '" + s + "'");
}

Mode mode_from_string(const std::string& s) {
    if (s == "base") return Mode::base;
    if (s == "reflexion") return Mode::reflexion;
    if (s == "dot") return Mode::dot;
    if (s == "dot_bank") return Mode::dot_bank;
    if (s == "paramagent") return Mode::paramagent;
    if (s == "paramagent_plus") return Mode::paramagent_plus;
    if (s == "parametric_only") return Mode::parametric_only;
    throw ParseError("unknown mode: '" + s + "'");
}

ReflectionSource reflection_source_from_string(const std::string& s) {
    if (s == "self") return ReflectionSource::self;
    if (s == "parametric") return ReflectionSource::parametric;
    if (s == "prompt_variant") return ReflectionSource::prompt_variant;
    throw ParseError("unknown reflection source: '" + s + "'");
}

void validate(const RunConfig& cfg) {
    if (cfg.t_max < 1) throw ValidationError("t_max must be >= 1");
    if (cfg.workers < 1) throw ValidationError("workers must be >= 1");
    if (cfg.top_j < 0) throw ValidationError("top_j must be >= 0");
    if (cfg.price_per_million < 0) throw ValidationError("price_per_million must be >= 0");
    const bool needs_bank = cfg.mode == Mode::dot_bank || cfg.mode == Mode::paramagent_plus;
    if (needs_bank && cfg.top_j == 0)
        throw ValidationError("top_j > 0 required for mode " + to_string(cfg.mode));
}

void validate(const Reflection& r) {
    if (r.text.empty()) throw ValidationError("reflection text must be nonempty");
    if (r.iteration < 1) throw ValidationError("reflection iteration must be >= 1");
    if (r.temperature < 0.0 || r.temperature > 2.0)
        throw ValidationError("reflection temperature must be in [0, 2]");
}

bool is_unit_norm(const std::vector<double>& v, double tol) {
    if (v.empty()) return false;
    double sq = 0.0;
    for (double x : v) sq += x * x;
    return std::fabs(std::sqrt(sq) - 1.0) <= tol;
}

} // namespace agentmem
