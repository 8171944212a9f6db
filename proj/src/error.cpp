#include "minc/error.hpp"

namespace minc {

namespace {

std::string with_position(const std::string& message, std::size_t position) {
  if (position == ParseError::npos) {
    return message;
  }
  return "at offset " + std::to_string(position) + ": " + message;
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t position)
    : Error(with_position(message, position)), position_(position) {}

SchemaError::SchemaError(const std::string& path, const std::string& message)
    : Error(path.empty() ? message : path + ": " + message), path_(path) {}

UnknownRelation::UnknownRelation(const std::string& name)
    : Error("unknown relation '" + name + "'") {}

} // namespace minc
