#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slidebench::pei {

class XmlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element node. Names are "prefix:local" with the prefix derived from the
/// namespace URI (p, a, r, c, pr for package relationships, ct for content
/// types, mc, p14, ...), so documents that bind unusual prefixes compare equal.
struct XmlNode {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::vector<std::unique_ptr<XmlNode>> children;
  std::string text;  // concatenated character data directly inside this element

  const XmlNode* child(const std::string& n) const;
  std::vector<const XmlNode*> children_named(const std::string& n) const;
  std::optional<std::string> attr(const std::string& n) const;
  std::string local_name() const;

  /// Depth-first visit of every descendant (not this node).
  void visit(const std::function<void(const XmlNode&)>& fn) const;
  bool has_descendant(const std::string& n) const;
  std::size_t count_descendants(const std::string& n) const;
};

std::unique_ptr<XmlNode> parse_xml(const std::string& text);

/// XML escaping for attribute values and text.
std::string xml_escape(const std::string& s);

}  // namespace slidebench::pei
