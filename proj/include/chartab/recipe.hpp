#pragma once

#include <iosfwd>
#include <memory>

#include "chartab/table.hpp"

namespace chartab {

/// A parsed pipeline recipe: an ordered list of steps with named bindings.
/// Steps reference only previously bound names; a recipe is pure given the
/// fixture directory.
struct Recipe {
    struct Step {
        int line;
        std::vector<std::string> tokens;
    };
    std::string name;
    std::vector<Step> steps;

    static Recipe parse(std::istream& is, const std::string& filename);
    static Recipe parse_file(const std::string& path);
};

struct RecipeOptions {
    std::string fixtures_dir = ".";
    std::string out_dir;
    bool long_mode = false;
};

struct RecipeResult {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Runs a recipe; progress and counts go to the report stream, deterministic
/// across runs.  Pinned assertions that fail are collected (and the result is
/// marked failed) rather than aborting the run, except for hard errors.
RecipeResult run_recipe(const Recipe& recipe, const RecipeOptions& options, std::ostream& report);

}  // namespace chartab
