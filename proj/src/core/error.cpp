#include "sfpa/error.h"

namespace sfpa {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                 message),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(Kind kind, const std::string& node, const std::string& message)
    : InputError(message), kind_(kind), node_(node) {}

NotATreeError::NotATreeError(const std::string& node)
    : PreconditionError("not a tree: node \"" + node + "\" has multiple parents"), node_(node) {}

CapExceededError::CapExceededError(std::size_t basic_events, std::size_t cap)
    : PreconditionError("enumeration cap exceeded: " + std::to_string(basic_events) +
                        " basic events (cap " + std::to_string(cap) + ")"),
      basic_events_(basic_events),
      cap_(cap) {}

CompositionError::CompositionError(Kind kind, const std::string& node, const std::string& message)
    : PreconditionError(message), kind_(kind), node_(node) {}

NoCutSetError::NoCutSetError()
    : PreconditionError("the fault tree has no cut sets (unreliability is 0)") {}

}  // namespace sfpa
