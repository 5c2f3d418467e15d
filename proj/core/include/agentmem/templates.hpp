#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "agentmem/types.hpp"

namespace agentmem::templates {

/// Named prompt texts keyed by purpose and domain. Ships with built-in
/// defaults; a templates directory overrides individual keys via files named
/// `<key>.txt`.
///
/// Keys: instruction_{code,math,qa}, reflection_{code,math,qa}, dot_variants,
/// parametric_{code,math,qa}, curation_{code,math,qa}, synthesis_code.
class TemplateSet {
  public:
    static TemplateSet builtin();
    static TemplateSet load(const std::filesystem::path& dir);

    const std::string& get(const std::string& key) const;
    const std::string& instruction(Domain d) const { return get("instruction_" + to_string(d)); }
    const std::string& reflection(Domain d) const { return get("reflection_" + to_string(d)); }
    const std::string& parametric(Domain d) const { return get("parametric_" + to_string(d)); }
    const std::string& curation(Domain d) const { return get("curation_" + to_string(d)); }

    /// Reflection-instruction variants, one per "---" separated block.
    std::vector<std::string> dot_variants() const;

    void set(const std::string& key, std::string text) { entries_[key] = std::move(text); }

  private:
    std::map<std::string, std::string> entries_;
};

} // namespace agentmem::templates
