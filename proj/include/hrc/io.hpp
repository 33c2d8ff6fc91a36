#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hrc/model.hpp"

namespace hrc {

struct Token {
    std::string text;
    int line = 0;
    int column = 0;
};

// Splits text into per-line token lists; '#' starts a comment, ':' '(' ')' are tokens of their own.
std::vector<std::vector<Token>> tokenize(std::string_view text);

// Reads syntax and resolves identifiers; does not check invariants.
HrcInstance parse_hrc_structure(std::string_view text);
// parse_hrc_structure followed by validate_instance; throws ValidationError on the first violation.
HrcInstance parse_hrc(std::string_view text);
std::string write_hrc(const HrcInstance &instance);

MultigraphInstance parse_multigraph(std::string_view text);
std::string write_multigraph(const MultigraphInstance &instance);

SmtiInstance parse_smti(std::string_view text);
std::string write_smti(const SmtiInstance &instance);

CnfFormula parse_dimacs(std::string_view text);
std::string write_dimacs(const CnfFormula &formula);

struct MatchingFile {
    HrcMatching matching;
    std::vector<int> capacity;  // per hospital; the instance capacity unless overridden
};

MatchingFile parse_matching(const HrcInstance &instance, std::string_view text);
// "match" lines sorted by doctor identifier; "capacity" lines only where capacity differs from the instance.
std::string write_matching(const HrcInstance &instance, const HrcMatching &matching,
                           const std::vector<int> *capacity = nullptr);

std::string read_file(const std::string &path);

}  // namespace hrc
