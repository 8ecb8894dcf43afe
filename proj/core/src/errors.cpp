#include "labelforge/errors.hpp"

namespace labelforge {

namespace {

std::string missing_message(const std::vector<std::string>& tags)
{
    std::string msg = "tags not found in EPS:";
    for (const auto& t : tags)
        msg += " " + t;
    return msg;
}

} // namespace

MissingTagsError::MissingTagsError(std::vector<std::string> tags)
    : SemanticError(missing_message(tags)), tags_(std::move(tags))
{
}

} // namespace labelforge
