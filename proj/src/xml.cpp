#include "slidebench/xml.hpp"

#include <expat.h>

#include <string_view>

namespace slidebench::pei {

namespace {

constexpr char kSep = '\x01';

const std::map<std::string, std::string, std::less<>>& known_namespaces() {
  static const std::map<std::string, std::string, std::less<>> m = {
      {"http://schemas.openxmlformats.org/presentationml/2006/main", "p"},
      {"http://schemas.openxmlformats.org/drawingml/2006/main", "a"},
      {"http://schemas.openxmlformats.org/officeDocument/2006/relationships", "r"},
      {"http://schemas.openxmlformats.org/drawingml/2006/chart", "c"},
      {"http://schemas.openxmlformats.org/package/2006/relationships", "pr"},
      {"http://schemas.openxmlformats.org/package/2006/content-types", "ct"},
      {"http://schemas.openxmlformats.org/markup-compatibility/2006", "mc"},
      {"http://schemas.microsoft.com/office/powerpoint/2010/main", "p14"},
      {"http://schemas.microsoft.com/office/drawing/2016/SVG/main", "asvg"},
      {"http://purl.oclc.org/ooxml/presentationml/main", "p"},
      {"http://purl.oclc.org/ooxml/drawingml/main", "a"},
      {"http://purl.oclc.org/ooxml/officeDocument/relationships", "r"},
      {"http://purl.oclc.org/ooxml/drawingml/chart", "c"},
  };
  return m;
}

std::string qualify(const char* raw) {
  std::string_view s(raw);
  const auto cut = s.find(kSep);
  if (cut == std::string_view::npos) return std::string(s);
  const auto uri = s.substr(0, cut);
  const auto local = s.substr(cut + 1);
  const auto& ns = known_namespaces();
  auto it = ns.find(uri);
  std::string prefix = it != ns.end() ? it->second : "{" + std::string(uri) + "}";
  return prefix + ":" + std::string(local);
}

struct Builder {
  std::unique_ptr<XmlNode> root;
  std::vector<XmlNode*> stack;
};

void on_start(void* ud, const XML_Char* name, const XML_Char** atts) {
  auto* b = static_cast<Builder*>(ud);
  auto node = std::make_unique<XmlNode>();
  node->name = qualify(name);
  for (int i = 0; atts[i]; i += 2) node->attrs[qualify(atts[i])] = atts[i + 1];
  XmlNode* raw = node.get();
  if (b->stack.empty()) {
    b->root = std::move(node);
  } else {
    b->stack.back()->children.push_back(std::move(node));
  }
  b->stack.push_back(raw);
}

void on_end(void* ud, const XML_Char*) { static_cast<Builder*>(ud)->stack.pop_back(); }

void on_text(void* ud, const XML_Char* s, int len) {
  auto* b = static_cast<Builder*>(ud);
  if (!b->stack.empty()) b->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

const XmlNode* XmlNode::child(const std::string& n) const {
  for (const auto& c : children) {
    if (c->name == n) return c.get();
  }
  return nullptr;
}

std::vector<const XmlNode*> XmlNode::children_named(const std::string& n) const {
  std::vector<const XmlNode*> out;
  for (const auto& c : children) {
    if (c->name == n) out.push_back(c.get());
  }
  return out;
}

std::optional<std::string> XmlNode::attr(const std::string& n) const {
  auto it = attrs.find(n);
  if (it == attrs.end()) return std::nullopt;
  return it->second;
}

std::string XmlNode::local_name() const {
  const auto cut = name.rfind(':');
  return cut == std::string::npos ? name : name.substr(cut + 1);
}

void XmlNode::visit(const std::function<void(const XmlNode&)>& fn) const {
  for (const auto& c : children) {
    fn(*c);
    c->visit(fn);
  }
}

bool XmlNode::has_descendant(const std::string& n) const {
  for (const auto& c : children) {
    if (c->name == n || c->has_descendant(n)) return true;
  }
  return false;
}

std::size_t XmlNode::count_descendants(const std::string& n) const {
  std::size_t count = 0;
  visit([&](const XmlNode& x) {
    if (x.name == n) ++count;
  });
  return count;
}

std::unique_ptr<XmlNode> parse_xml(const std::string& text) {
  XML_Parser parser = XML_ParserCreateNS(nullptr, kSep);
  if (!parser) throw std::runtime_error("cannot allocate XML parser");
  Builder b;
  XML_SetUserData(parser, &b);
  XML_SetElementHandler(parser, on_start, on_end);
  XML_SetCharacterDataHandler(parser, on_text);
  const auto status = XML_Parse(parser, text.data(), static_cast<int>(text.size()), 1);
  if (status != XML_STATUS_OK) {
    const std::string msg = std::string(XML_ErrorString(XML_GetErrorCode(parser))) + " at line " +
                            std::to_string(XML_GetCurrentLineNumber(parser));
    XML_ParserFree(parser);
    throw XmlError(msg);
  }
  XML_ParserFree(parser);
  if (!b.root) throw XmlError("document has no root element");
  return std::move(b.root);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace slidebench::pei
