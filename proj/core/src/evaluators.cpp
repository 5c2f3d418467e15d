#include "agentmem/evaluators.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "agentmem/errors.hpp"

namespace agentmem::eval {

void validate(const SandboxSpec& spec) {
    if (spec.timeout_seconds <= 0.0) throw ValidationError("sandbox timeout must be > 0");
    if (spec.command_template.empty()) throw ValidationError("sandbox command template empty");
}

std::string to_string(EvalPhase p) { return p == EvalPhase::generation ? "generation" : "final"; }

namespace {

std::string substitute(std::string tmpl, const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = tmpl.find(key, pos)) != std::string::npos) {
        tmpl.replace(pos, key.size(), value);
        pos += value.size();
    }
    return tmpl;
}

std::atomic<std::uint64_t> g_eval_counter{0};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw EvalError("cannot write sandbox file: " + path.string());
    out << content;
}

} // namespace

CodeEvalResult evaluate_code(const std::string& program, const std::vector<std::string>& tests,
                             const SandboxSpec& sandbox, EvalPhase phase) {
    validate(sandbox);
    (void)phase; // callers choose the test set; the phase tags the log record

    CodeEvalResult result;
    if (tests.empty()) {
        result.verdict = {true, "no tests to run"};
        return result;
    }

    const auto dir =
        sandbox.workdir / ("eval-" + std::to_string(g_eval_counter.fetch_add(1)));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw EvalError("cannot create sandbox dir " + dir.string() + ": " + ec.message());

    const auto program_file = dir / "program.py";
    const auto test_file = dir / "test.py";
    write_file(program_file, program);

    bool all_passed = true;
    std::string detail = "all tests passed";
    for (const auto& test : tests) {
        const std::string merged = program + "\n\n" + test + "\n";
        result.sandbox_inputs.push_back(merged);
        write_file(test_file, merged);

        std::string command = sandbox.command_template;
        command = substitute(command, "{program_file}", program_file.string());
        command = substitute(command, "{test_file}", test_file.string());

        const auto run = detail::run_command(command, dir, sandbox.timeout_seconds);
        if (run.timed_out) {
            all_passed = false;
            detail = "timeout";
            break;
        }
        if (run.exit_code != 0) {
            all_passed = false;
            detail = "failing test: " + test;
            if (!run.output.empty()) {
                std::string excerpt = run.output.substr(run.output.size() > 400
                                                            ? run.output.size() - 400
                                                            : 0);
                detail += "\noutput: " + excerpt;
            }
            break;
        }
    }

    std::filesystem::remove_all(dir, ec);
    result.verdict = {all_passed, detail};
    return result;
}

std::string qa_normalize(const std::string& text) {
    std::string lowered;
    lowered.reserve(text.size());
    for (unsigned char c : text) {
        if (std::ispunct(c)) continue;
        lowered.push_back(static_cast<char>(std::tolower(c)));
    }
    // Collapse whitespace into single spaces, trimming ends.
    std::string collapsed;
    bool pending_space = false;
    for (unsigned char c : lowered) {
        if (std::isspace(c)) {
            pending_space = !collapsed.empty();
        } else {
            if (pending_space) collapsed.push_back(' ');
            pending_space = false;
            collapsed.push_back(static_cast<char>(c));
        }
    }
    for (const char* article : {"a ", "an ", "the "}) {
        const std::size_t len = std::char_traits<char>::length(article);
        if (collapsed.rfind(article, 0) == 0) {
            collapsed.erase(0, len);
            break;
        }
    }
    return collapsed;
}

EvalVerdict evaluate_qa(const std::string& answer, const std::string& gold) {
    if (gold.empty()) throw InputError("evaluate_qa: gold answer must be nonempty");
    const std::string a = qa_normalize(answer);
    const std::string g = qa_normalize(gold);
    EvalVerdict v;
    v.pass = !a.empty() && a == g;
    v.detail = "normalized: '" + a + "' vs gold '" + g + "'";
    return v;
}

std::string math_extract_answer(const std::string& text) {
    std::string lowered;
    lowered.reserve(text.size());
    for (unsigned char c : text) lowered.push_back(static_cast<char>(std::tolower(c)));
    const std::size_t pos = lowered.rfind("answer");
    if (pos == std::string::npos) return text;
    std::size_t start = pos + 6; // past "answer"
    while (start < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[start])) || text[start] == ':' ||
            text[start] == '*' || text[start] == '#' || text[start] == '.' || text[start] == '-'))
        ++start;
    return text.substr(start);
}

namespace {

std::string math_normalize(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        if (std::isspace(c) || c == '$') continue;
        out.push_back(static_cast<char>(c));
    }
    while (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

} // namespace

namespace detail {

std::optional<double> parse_number(const std::string& text) {
    const std::string s = math_normalize(text);
    if (s.empty()) return std::nullopt;
    const auto slash = s.find('/');
    if (slash != std::string::npos && slash > 0 && slash + 1 < s.size()) {
        const auto numer = parse_number(s.substr(0, slash));
        const auto denom = parse_number(s.substr(slash + 1));
        if (numer && denom && *denom != 0.0) return *numer / *denom;
        return std::nullopt;
    }
    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return value;
}

} // namespace detail

EvalVerdict evaluate_math(const std::string& answer, const std::string& gold) {
    if (gold.empty()) throw InputError("evaluate_math: gold answer must be nonempty");
    const std::string extracted = math_extract_answer(answer);
    const std::string a = math_normalize(extracted);
    const std::string g = math_normalize(math_extract_answer(gold));

    EvalVerdict v;
    v.detail = "normalized: '" + a + "' vs gold '" + g + "'";
    if (!a.empty() && a == g) {
        v.pass = true;
        return v;
    }
    const auto na = detail::parse_number(a);
    const auto ng = detail::parse_number(g);
    if (na && ng) {
        const double scale = std::max({1.0, std::fabs(*na), std::fabs(*ng)});
        v.pass = std::fabs(*na - *ng) <= 1e-9 * scale;
        if (v.pass) v.detail += " (numeric match)";
    }
    return v;
}

std::optional<double> aggregate_score(const std::vector<EvalVerdict>& verdicts) {
    if (verdicts.empty()) return std::nullopt;
    double sum = 0.0;
    for (const auto& v : verdicts) sum += v.pass ? 1.0 : 0.0;
    return sum / static_cast<double>(verdicts.size());
}

} // namespace agentmem::eval
