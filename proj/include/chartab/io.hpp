#pragma once

#include <iosfwd>

#include "chartab/table.hpp"

namespace chartab {

/// Serializes a table in the interchange format: header, orders,
/// centralizers (decimal strings), power maps, fusions, irreducible rows with
/// cyclotomic values encoded as {conductor,[(exponent,numerator,denominator),...]}.
void save_table(const CharacterTable& tbl, std::ostream& os);
void save_table_file(const CharacterTable& tbl, const std::string& path);

/// Loads and validates a table; rejects non-canonical cyclotomic encodings
/// and inconsistent class data, with line diagnostics.
CharacterTable load_table(std::istream& is, const std::string& filename = "<stream>");
CharacterTable load_table_file(const std::string& path);

/// Character lists bound to a table identifier.
struct CharacterSet {
    std::string table_identifier;
    std::vector<ClassFunction> characters;
};

void save_characters(const CharacterSet& set, std::ostream& os);
CharacterSet load_characters(std::istream& is, const std::string& filename = "<stream>");
void save_characters_file(const CharacterSet& set, const std::string& path);
CharacterSet load_characters_file(const std::string& path);

std::string cyclotomic_to_token(const Cyclotomic& x);
Cyclotomic cyclotomic_from_token(const std::string& token);

}  // namespace chartab
