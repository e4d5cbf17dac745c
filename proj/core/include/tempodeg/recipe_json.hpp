#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tempodeg/curriculum.hpp"

namespace tempodeg {

inline constexpr std::string_view kRecipeFormat = "tempodeg.recipe/1";

nlohmann::json recipe_to_json(const RecipeRecord& recipe);
/// Throws FormatError on a malformed document.
RecipeRecord recipe_from_json(const nlohmann::json& doc);

/// Canonical text form; parse(serialize(r)) == r for every recipe.
std::string serialize_recipe(const RecipeRecord& recipe);
RecipeRecord parse_recipe(std::string_view text);

void save_recipe(const RecipeRecord& recipe, const std::filesystem::path& path);
RecipeRecord load_recipe(const std::filesystem::path& path);

}  // namespace tempodeg
