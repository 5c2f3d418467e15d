#include "agentmem/templates.hpp"

#include <fstream>
#include <sstream>

#include "agentmem/errors.hpp"

namespace agentmem::templates {

namespace {

const char* kInstructionCode = R"TXT(You are an AI Python assistant. You will be given some potential pitfalls and several flawed implementations for the coding challenge, as well as your previous implementation of a function, a series of unit-test results, and your self-reflection on your previous implementation. Try to avoid the errors from your previous implementation and the listed pitfalls.

Instruction: ALWAYS WRITE your full implementation (restate the function signature).)TXT";

const char* kInstructionMath = R"TXT(You are revising your previous answer to a mathematics problem.
You will receive:
(1) the original question,
(2) potential mistakes and pitfalls,
(3) your last answer,
(4) feedback (Right or Wrong) explaining why that answer was unsatisfactory,
and (5) your brief self-reflection on the mistake.

Respond with:
1. Reasoning: updated step-by-step thoughts.
2. Answer: the corrected final result.

Formatting: The final answer should be simplified to its simplest form, e.g., 25, 25_{16}, 1/36, etc.)TXT";

const char* kInstructionQa = R"TXT(You are revising your previous answer to a multi-hop QA question.
You will receive:
(1) the original question,
(2) some key points, the underlying intent, and possible inference patterns that facilitate answering this question,
(3) your last answer,
(4) supporting context,
(5) feedback (Right or Wrong) explaining why that answer was unsatisfactory,
(6) your brief self-reflection on the mistake.

Instruction: Based on the inputs, produce a new single-phrase answer that resolves the error and fully answers the question. Output only the answer - no commentary, no code.)TXT";

const char* kReflectionCode = R"TXT(You are an advanced reasoning agent that improves through self-reflection. You will be given a coding task, your previous implementation, and the unit-test feedback it received. Diagnose in a few sentences what went wrong and state a concrete plan for the next attempt. Output only the reflection.)TXT";

const char* kReflectionMath = R"TXT(You are an advanced reasoning agent that improves through self-reflection. You will be given a mathematics problem, your previous answer, and the feedback it received. Diagnose in a few sentences where the reasoning went wrong and state a concrete plan for the next attempt. Output only the reflection.)TXT";

const char* kReflectionQa = R"TXT(You are an advanced reasoning agent that improves through self-reflection. You will be given a question, your previous answer, and the feedback it received. Diagnose in a few sentences why the answer was wrong and state a concrete plan for the next attempt. Output only the reflection.)TXT";

const char* kDotVariants = R"TXT(Diagnose the single most likely root cause of the failure and propose a fix.
---
List two distinct hypotheses for why the attempt failed, then pick the more plausible one and outline the repair.
---
Focus on edge cases: which inputs or conditions did the previous attempt mishandle? State the fix.
---
Re-read the task statement and check the attempt against each stated requirement; name the requirement that was violated and how to satisfy it.)TXT";

const char* kCurationCode = R"TXT(You are an expert software engineer preparing reflective training targets for coding tasks.
Given a function signature and docstring, enumerate the potential mistakes an implementer is likely to make, then provide flawed implementations illustrating each pitfall.
Follow the format of this example exactly.

[Function Signature]:
def has_close_elements(numbers: List[float], threshold: float) -> bool:
    """Check if any two numbers in the list are closer than the threshold."""

[Potential mistakes]:
1. **Empty or Single-Element Lists** must return `False`, not `True`.
2. **Duplicate Values** must be compared (difference 0), so never drop duplicates.
3. Always use **absolute difference** (`abs(a - b)`), not raw subtraction.
4. Use the correct **strictness** (`< threshold`, not `<=`).
5. Ensure you don't **exit too early**---check all distinct pairs.

[Flawed Implementations Illustrating Each Pitfall]:

def has_close_elements_v1(numbers: List[float], threshold: float) -> bool:
    # BUG: returns True for empty or single-element lists
    if len(numbers) < 2:
        return True
    for i in range(len(numbers)-1):
        for j in range(i+1, len(numbers)):
            if abs(numbers[i] - numbers[j]) < threshold:
                return True
    return False

def has_close_elements_v2(numbers: List[float], threshold: float) -> bool:
    # BUG: removes duplicates, so identical values never compared
    numbers = sorted(set(numbers))
    for i in range(len(numbers)-1):
        if abs(numbers[i+1] - numbers[i]) < threshold:
            return True
    return False

def has_close_elements_v3(numbers: List[float], threshold: float) -> bool:
    # BUG: uses raw subtraction instead of abs()
    for i in range(len(numbers)-1):
        for j in range(i+1, len(numbers)):
            if (numbers[i] - numbers[j]) < threshold:
                return True
    return False

def has_close_elements_v4(numbers: List[float], threshold: float) -> bool:
    # BUG: uses <= instead of <, misclassifies exactly-threshold pairs
    for i in range(len(numbers)-1):
        for j in range(i+1, len(numbers)):
            if abs(numbers[i] - numbers[j]) <= threshold:
                return True
    return False

def has_close_elements_v5(numbers: List[float], threshold: float) -> bool:
    # BUG: breaks out of the outer loop too soon
    for i in range(len(numbers)-1):
        for j in range(i+1, len(numbers)):
            if abs(numbers[i] - numbers[j]) < threshold:
                return True
        break
    return False

END OF EXAMPLE

Now produce the same analysis for the task given by the user.)TXT";

const char* kCurationMath = R"TXT(You are an expert mathematics tutor preparing reflective training targets.
Given a math problem, enumerate the pitfalls and potential mistakes a solver is likely to make.
Follow the format of this example exactly.

Question. Circle O is located on the coordinate plane with center at (2,3). One endpoint of a diameter is at (-1,-1). What are the coordinates of the other endpoint of this diameter? Express your answer as an ordered pair.

[Potential mistakes]:
1. **Confusing the center with an endpoint.** Assuming the center is an endpoint leads to an incorrect reflection point.
2. **Incorrect use of the midpoint formula.** Forgetting that the center is the midpoint of the diameter, or solving (x + x2)/2 = center_x incorrectly.
3. **Using the wrong coordinates for the midpoint.** Plugging endpoint coordinates in place of the center (or vice versa) yields the wrong unknowns.
4. **Arithmetic errors.** Sign or algebra mistakes when solving, e.g. 2 = (-1+x)/2 => x=3 (incorrect) instead of x=5.
5. **Switching x and y.** Mixing x- and y-midpoint formulas, or using x values to solve for y.
6. **Incorrect interpretation of the diameter.** Thinking the diameter extends in the same direction from the center; doubling the vector or reflecting in the wrong direction.

END OF EXAMPLE

Now produce the same analysis for the problem given by the user.)TXT";

const char* kCurationQa = R"TXT(You are an expert analyst preparing question-decomposition training targets for multi-hop questions.
Given a question, decompose it into compact semantic units and potential reasoning sub-tasks.
Follow the format of this example exactly.

Question. Anatoly Maltsev and Valentin Turchin were both from Russia, which of the two is known for his work as a mathematician?

Question Parsing and Intent Extraction

Key Components
- Entity A: Anatoly Maltsev - mathematician/logician; contributions in mathematical logic and abstract algebra.
- Entity B: Valentin Turchin - computer scientist/philosopher; work in cybernetics and philosophy of science.
- Implied Relationship: Comparative inquiry: which individual is more closely associated with mathematics.
- Answer Type Expected: Person name (e.g., "Anatoly Maltsev").
- Reasoning Type: Comparative factual reasoning.
- Required Background: Biographical profiles or retrieved professional records.

Inference Trace
1. Retrieve factual data about Maltsev's and Turchin's primary academic domains.
2. Classify Maltsev as a mathematician (core contributions to mathematical logic).
3. Classify Turchin as mainly in cybernetics and philosophy.
4. Eliminate Turchin as the primary mathematician.
5. Conclude: Anatoly Maltsev.

Disambiguation Note
Nationality (Russia) does not help differentiate them.

END OF EXAMPLE

Now produce the same decomposition for the question given by the user.)TXT";

const char* kSynthesisCode = R"TXT(You are an expert Python engineer crafting coding problems.
Follow this EXACT format:

func_sign: def is_palindrome(text: str) -> bool:
docstring: 'Return True if text reads the same forwards and backwards, ignoring case.'

- Use the category provided by the user.
- Output EXACTLY two lines:
    func_sign: <signature with colon>
    docstring: '<single-quoted string with \n escapes>'
- Do NOT wrap in JSON or triple quotes.
- Avoid any collisions with past tasks.)TXT";

} // namespace

TemplateSet TemplateSet::builtin() {
    TemplateSet set;
    set.set("instruction_code", kInstructionCode);
    set.set("instruction_math", kInstructionMath);
    set.set("instruction_qa", kInstructionQa);
    set.set("reflection_code", kReflectionCode);
    set.set("reflection_math", kReflectionMath);
    set.set("reflection_qa", kReflectionQa);
    set.set("dot_variants", kDotVariants);
    set.set("parametric_code", "");
    set.set("parametric_math", "");
    set.set("parametric_qa", "");
    set.set("curation_code", kCurationCode);
    set.set("curation_math", kCurationMath);
    set.set("curation_qa", kCurationQa);
    set.set("synthesis_code", kSynthesisCode);
    return set;
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
    TemplateSet set = builtin();
    if (!std::filesystem::is_directory(dir))
        throw InputError("templates directory not found: " + dir.string());
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        std::ifstream in(entry.path());
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        // Trim one trailing newline that editors append to files.
        if (!text.empty() && text.back() == '\n') text.pop_back();
        set.set(entry.path().stem().string(), std::move(text));
    }
    return set;
}

const std::string& TemplateSet::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw InputError("unknown template key: " + key);
    return it->second;
}

std::vector<std::string> TemplateSet::dot_variants() const {
    const std::string& raw = get("dot_variants");
    std::vector<std::string> variants;
    std::string current;
    std::istringstream in(raw);
    std::string line;
    auto flush = [&] {
        while (!current.empty() && current.back() == '\n') current.pop_back();
        if (!current.empty()) variants.push_back(current);
        current.clear();
    };
    while (std::getline(in, line)) {
        if (line == "---") {
            flush();
        } else {
            current += line;
            current += '\n';
        }
    }
    flush();
    if (variants.empty()) throw InputError("dot_variants template has no variants");
    return variants;
}

} // namespace agentmem::templates
