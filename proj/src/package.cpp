#include "slidebench/package.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

#include "slidebench/xml.hpp"
#include "slidebench/zip.hpp"

namespace slidebench::pei {

namespace {

const std::vector<std::string> kBehaviours = {"p:anim",      "p:animClr",   "p:animEffect",
                                              "p:animMotion", "p:animRot",   "p:animScale",
                                              "p:set",        "p:cmd",       "p:audio",
                                              "p:video"};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string extension_of(const std::string& name) {
  const auto dot = name.rfind('.');
  if (dot == std::string::npos) return {};
  return lower(name.substr(dot + 1));
}

bool is_bitmap(const std::string& target) {
  static const std::vector<std::string> exts = {"png", "jpg",  "jpeg", "gif", "bmp",
                                                "tif", "tiff", "webp", "jfif"};
  return std::find(exts.begin(), exts.end(), extension_of(target)) != exts.end();
}

std::string type_suffix(const std::string& uri) {
  const auto slash = uri.rfind('/');
  return slash == std::string::npos ? uri : uri.substr(slash + 1);
}

double num_attr(const XmlNode& n, const std::string& name) {
  const auto v = n.attr(name);
  if (!v) return 0.0;
  try {
    return std::stod(*v);
  } catch (const std::exception&) {
    return 0.0;
  }
}

std::optional<Rect> read_xfrm(const XmlNode* xfrm) {
  if (!xfrm) return std::nullopt;
  const XmlNode* off = xfrm->child("a:off");
  const XmlNode* ext = xfrm->child("a:ext");
  if (!off || !ext) return std::nullopt;
  return Rect{num_attr(*off, "x"), num_attr(*off, "y"), num_attr(*ext, "cx"),
              num_attr(*ext, "cy")};
}

class Reader {
 public:
  explicit Reader(const ZipArchive& zip, PresentationPackage& pkg) : zip_(zip), pkg_(pkg) {}

  std::unique_ptr<XmlNode> load(const std::string& part, bool required) {
    if (!zip_.contains(part)) {
      if (required) throw CorruptPackageError("missing part " + part);
      defect(part, "part referenced but not present");
      return nullptr;
    }
    try {
      return parse_xml(zip_.read(part));
    } catch (const CorruptPackageError& e) {
      if (required) throw;
      defect(part, e.what());
    } catch (const XmlError& e) {
      if (required) throw CorruptPackageError(part + ": " + e.what());
      defect(part, std::string("malformed XML: ") + e.what());
    }
    return nullptr;
  }

  std::vector<Relationship> rels(const std::string& part) {
    std::vector<Relationship> out;
    const std::string rp = rels_part_for(part);
    if (!zip_.contains(rp)) return out;
    auto root = load(rp, false);
    if (!root) return out;
    for (const XmlNode* r : root->children_named("pr:Relationship")) {
      Relationship rel;
      rel.id = r->attr("Id").value_or("");
      rel.type = type_suffix(r->attr("Type").value_or(""));
      const std::string target = r->attr("Target").value_or("");
      rel.external = r->attr("TargetMode").value_or("") == "External";
      rel.target = rel.external ? target : resolve_target(part, target);
      out.push_back(std::move(rel));
    }
    return out;
  }

  void defect(const std::string& part, const std::string& message) {
    pkg_.defects.push_back({part, message});
  }

 private:
  const ZipArchive& zip_;
  PresentationPackage& pkg_;
};

const Relationship* find_rel(const std::vector<Relationship>& rels, const std::string& id) {
  for (const auto& r : rels) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const Relationship* find_rel_type(const std::vector<Relationship>& rels, const std::string& type) {
  for (const auto& r : rels) {
    if (r.type == type) return &r;
  }
  return nullptr;
}

std::string read_fill(const XmlNode* sppr, const std::vector<Relationship>& rels) {
  if (!sppr) return {};
  if (const XmlNode* solid = sppr->child("a:solidFill")) {
    for (const auto& c : solid->children) {
      return "solid:" + c->attr("val").value_or(c->local_name());
    }
    return "solid";
  }
  if (const XmlNode* blip = sppr->child("a:blipFill")) {
    if (const XmlNode* b = blip->child("a:blip")) {
      const auto id = b->attr("r:embed");
      if (id) {
        if (const Relationship* r = find_rel(rels, *id)) return "blip:" + r->target;
      }
    }
    return "blip";
  }
  if (sppr->child("a:gradFill")) return "grad";
  if (sppr->child("a:pattFill")) return "patt";
  if (sppr->child("a:noFill")) return "none";
  return {};
}

std::string read_geometry(const XmlNode* sppr) {
  if (!sppr) return {};
  if (const XmlNode* prst = sppr->child("a:prstGeom")) return prst->attr("prst").value_or("");
  if (sppr->child("a:custGeom")) return "custom";
  return {};
}

void read_text(const XmlNode* body, Shape& s) {
  if (!body) return;
  for (const XmlNode* p : body->children_named("a:p")) {
    ++s.paragraphs;
    p->visit([&](const XmlNode& n) {
      if (n.name != "a:t") return;
      if (std::any_of(n.text.begin(), n.text.end(),
                      [](unsigned char c) { return !std::isspace(c); })) {
        ++s.text_runs;
      }
    });
  }
}

bool is_placeholder(const XmlNode* nv) {
  if (!nv) return false;
  const XmlNode* nvpr = nv->child("p:nvPr");
  return nvpr && nvpr->child("p:ph");
}

std::vector<Shape> read_tree(const XmlNode& tree, const std::vector<Relationship>& rels);

std::optional<Shape> read_shape(const XmlNode& n, const std::vector<Relationship>& rels) {
  Shape s;
  s.element = n.name;
  if (n.name == "p:sp") {
    s.kind = ShapeKind::Shape;
    s.placeholder = is_placeholder(n.child("p:nvSpPr"));
    const XmlNode* sppr = n.child("p:spPr");
    if (sppr) s.xfrm = read_xfrm(sppr->child("a:xfrm"));
    s.geometry = read_geometry(sppr);
    s.fill = read_fill(sppr, rels);
    read_text(n.child("p:txBody"), s);
  } else if (n.name == "p:pic") {
    s.kind = ShapeKind::Picture;
    s.placeholder = is_placeholder(n.child("p:nvPicPr"));
    const XmlNode* sppr = n.child("p:spPr");
    if (sppr) s.xfrm = read_xfrm(sppr->child("a:xfrm"));
    s.geometry = read_geometry(sppr);
    if (const XmlNode* bf = n.child("p:blipFill")) {
      if (const XmlNode* blip = bf->child("a:blip")) {
        s.svg = blip->has_descendant("asvg:svgBlip");
        auto id = blip->attr("r:embed");
        if (!id) id = blip->attr("r:link");
        if (id) {
          if (const Relationship* r = find_rel(rels, *id)) {
            s.media_target = r->target;
            s.raster = !s.svg && is_bitmap(r->target);
          }
        }
      }
    }
    s.fill = s.media_target.empty() ? "" : "blip:" + s.media_target;
  } else if (n.name == "p:cxnSp") {
    s.kind = ShapeKind::Connector;
    const XmlNode* sppr = n.child("p:spPr");
    if (sppr) s.xfrm = read_xfrm(sppr->child("a:xfrm"));
    s.geometry = read_geometry(sppr);
  } else if (n.name == "p:grpSp") {
    s.kind = ShapeKind::Group;
    if (const XmlNode* gp = n.child("p:grpSpPr")) s.xfrm = read_xfrm(gp->child("a:xfrm"));
    s.children = read_tree(n, rels);
  } else if (n.name == "p:graphicFrame") {
    s.kind = ShapeKind::GraphicFrame;
    s.placeholder = is_placeholder(n.child("p:nvGraphicFramePr"));
    s.xfrm = read_xfrm(n.child("p:xfrm"));
    s.chart = n.has_descendant("c:chart");
  } else if (n.name == "p:contentPart") {
    s.kind = ShapeKind::Other;
  } else {
    return std::nullopt;
  }
  return s;
}

std::vector<Shape> read_tree(const XmlNode& tree, const std::vector<Relationship>& rels) {
  std::vector<Shape> out;
  for (const auto& c : tree.children) {
    if (c->name == "mc:AlternateContent") {
      const XmlNode* branch = c->child("mc:Choice");
      if (!branch) branch = c->child("mc:Fallback");
      if (!branch) continue;
      for (const auto& inner : branch->children) {
        if (auto s = read_shape(*inner, rels)) out.push_back(std::move(*s));
      }
      continue;
    }
    if (auto s = read_shape(*c, rels)) out.push_back(std::move(*s));
  }
  return out;
}

std::size_t count_tree_shapes(const XmlNode* root) {
  if (!root) return 0;
  const XmlNode* csld = root->child("p:cSld");
  const XmlNode* tree = csld ? csld->child("p:spTree") : nullptr;
  if (!tree) return 0;
  return read_tree(*tree, {}).size();
}

std::string media_kind(const std::string& type) {
  if (type == "image" || type == "video" || type == "audio" || type == "media") return type;
  return {};
}

}  // namespace

std::string rels_part_for(const std::string& part) {
  const auto slash = part.rfind('/');
  if (slash == std::string::npos) return "_rels/" + part + ".rels";
  return part.substr(0, slash + 1) + "_rels/" + part.substr(slash + 1) + ".rels";
}

std::string resolve_target(const std::string& source_part, const std::string& target) {
  std::vector<std::string> segs;
  std::string path;
  if (!target.empty() && target[0] == '/') {
    path = target.substr(1);
  } else {
    const auto slash = source_part.rfind('/');
    path = (slash == std::string::npos ? "" : source_part.substr(0, slash + 1)) + target;
  }
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string::npos) end = path.size();
    const std::string seg = path.substr(start, end - start);
    if (seg == "..") {
      if (!segs.empty()) segs.pop_back();
    } else if (!seg.empty() && seg != ".") {
      segs.push_back(seg);
    }
    start = end + 1;
  }
  std::string out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (i) out += '/';
    out += segs[i];
  }
  return out;
}

PresentationPackage open_package(const std::vector<std::uint8_t>& bytes) {
  if (!looks_like_zip(bytes)) throw CorruptPackageError("not a ZIP archive");
  const ZipArchive zip(bytes);
  PresentationPackage pkg;
  Reader reader(zip, pkg);

  std::string main_part;
  for (const auto& r : reader.rels("")) {
    if (r.type == "officeDocument" && !r.external) main_part = r.target;
  }
  if (main_part.empty()) {
    if (!zip.contains("ppt/presentation.xml")) {
      throw CorruptPackageError("presentation part not found");
    }
    reader.defect("_rels/.rels", "no officeDocument relationship; using ppt/presentation.xml");
    main_part = "ppt/presentation.xml";
  }
  const auto pres = reader.load(main_part, true);
  if (pres->name != "p:presentation") {
    throw CorruptPackageError(main_part + " is not a presentation part");
  }
  if (const XmlNode* sz = pres->child("p:sldSz")) {
    const double cx = num_attr(*sz, "cx"), cy = num_attr(*sz, "cy");
    if (cx > 0 && cy > 0) {
      pkg.slide_width = cx;
      pkg.slide_height = cy;
    }
  }
  const auto pres_rels = reader.rels(main_part);

  std::vector<std::string> slide_parts;
  if (const XmlNode* lst = pres->child("p:sldIdLst")) {
    for (const XmlNode* id : lst->children_named("p:sldId")) {
      const auto rid = id->attr("r:id");
      const Relationship* r = rid ? find_rel(pres_rels, *rid) : nullptr;
      if (!r) {
        reader.defect(main_part, "slide id " + id->attr("id").value_or("?") +
                                     " has a dangling relationship");
        continue;
      }
      slide_parts.push_back(r->target);
    }
  }

  auto ensure_master = [&](const std::string& part) {
    if (pkg.masters.count(part)) return;
    Master m{part, 0};
    if (auto root = reader.load(part, false)) m.shape_count = count_tree_shapes(root.get());
    pkg.masters[part] = m;
  };

  auto ensure_layout = [&](const std::string& part) {
    if (pkg.layouts.count(part)) return;
    Layout l{part, std::nullopt, 0};
    if (auto root = reader.load(part, false)) {
      l.shape_count = count_tree_shapes(root.get());
      const auto lrels = reader.rels(part);
      const Relationship* m = find_rel_type(lrels, "slideMaster");
      if (m && zip.contains(m->target)) {
        ensure_master(m->target);
        l.master = m->target;
      } else {
        reader.defect(part, m ? "master target missing: " + m->target
                              : "layout has no master relationship");
      }
    }
    pkg.layouts[part] = l;
  };

  for (std::size_t i = 0; i < slide_parts.size(); ++i) {
    Slide slide;
    slide.index = i + 1;
    slide.part = slide_parts[i];
    const auto root = reader.load(slide.part, false);
    slide.rels = reader.rels(slide.part);

    const Relationship* layout = find_rel_type(slide.rels, "slideLayout");
    if (layout && zip.contains(layout->target)) {
      ensure_layout(layout->target);
      slide.layout = layout->target;
    } else {
      reader.defect(slide.part, layout ? "layout target missing: " + layout->target
                                       : "slide has no layout relationship");
    }

    for (const auto& r : slide.rels) {
      const std::string kind = media_kind(r.type);
      if (kind.empty()) continue;
      pkg.media.push_back({slide.index, kind, r.target, r.external});
      if (!r.external && !zip.contains(r.target)) {
        reader.defect(slide.part, "media target missing: " + r.target);
      }
    }

    if (root) {
      if (const XmlNode* csld = root->child("p:cSld")) {
        if (const XmlNode* tree = csld->child("p:spTree")) slide.shapes = read_tree(*tree, slide.rels);
      }
      slide.has_transition = root->has_descendant("p:transition");
      if (const XmlNode* timing = root->child("p:timing")) {
        for (const auto& b : kBehaviours) {
          if (timing->has_descendant(b)) {
            slide.has_animation = true;
            break;
          }
        }
      }
      root->visit([&](const XmlNode& n) {
        if (n.name != "c:chart") return;
        const auto rid = n.attr("r:id");
        const Relationship* r = rid ? find_rel(slide.rels, *rid) : nullptr;
        if (!r) {
          reader.defect(slide.part, "chart reference with dangling relationship");
          return;
        }
        Chart chart;
        chart.part = r->target;
        chart.slide_index = slide.index;
        if (auto croot = reader.load(r->target, false)) {
          const auto crels = reader.rels(r->target);
          const Relationship* wb = nullptr;
          if (const XmlNode* ext = croot->child("c:externalData")) {
            if (const auto id = ext->attr("r:id")) wb = find_rel(crels, *id);
          }
          if (!wb) wb = find_rel_type(crels, "package");
          if (!wb) wb = find_rel_type(crels, "oleObject");
          if (wb) {
            chart.workbook = wb->target;
            chart.workbook_external = wb->external;
            if (!wb->external) {
              const auto* e = zip.find(wb->target);
              chart.workbook_present = e && e->size > 0;
            }
          }
        }
        pkg.charts.push_back(std::move(chart));
      });
    }
    pkg.slides.push_back(std::move(slide));
  }
  return pkg;
}

}  // namespace slidebench::pei
