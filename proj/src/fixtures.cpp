#include "slidebench/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

#include "slidebench/xml.hpp"
#include "slidebench/zip.hpp"

namespace slidebench::pei {

namespace {

const std::string kNs =
    "xmlns:a=\"http://schemas.openxmlformats.org/drawingml/2006/main\" "
    "xmlns:r=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships\" "
    "xmlns:p=\"http://schemas.openxmlformats.org/presentationml/2006/main\"";
const std::string kRelBase = "http://schemas.openxmlformats.org/officeDocument/2006/relationships/";
const std::string kDecl = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";

const unsigned char kPng[] = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48,
    0x44, 0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x06, 0x00, 0x00,
    0x00, 0x1f, 0x15, 0xc4, 0x89, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x44, 0x41, 0x54, 0x78,
    0xda, 0x63, 0x64, 0x60, 0xf8, 0x5f, 0x0f, 0x00, 0x02, 0x87, 0x01, 0x80, 0xeb, 0x47,
    0xba, 0x92, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};

std::string emu(double v) { return std::to_string(static_cast<long long>(v)); }

std::string xfrm(const Rect& r, const std::string& tag = "a:xfrm") {
  return "<" + tag + "><a:off x=\"" + emu(r.x) + "\" y=\"" + emu(r.y) + "\"/><a:ext cx=\"" +
         emu(r.cx) + "\" cy=\"" + emu(r.cy) + "\"/></" + tag + ">";
}

std::string nv(const std::string& outer, const std::string& inner, int id, const std::string& name,
               const std::string& extra = "") {
  return "<" + outer + "><p:cNvPr id=\"" + std::to_string(id) + "\" name=\"" + name + "\"/><" +
         inner + "/><p:nvPr>" + extra + "</p:nvPr></" + outer + ">";
}

std::string rels_xml(const std::vector<std::tuple<std::string, std::string, std::string, bool>>& rels) {
  std::string out = kDecl +
                    "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">";
  for (const auto& [id, type, target, external] : rels) {
    out += "<Relationship Id=\"" + id + "\" Type=\"" + kRelBase + type + "\" Target=\"" +
           xml_escape(target) + "\"" + (external ? " TargetMode=\"External\"" : "") + "/>";
  }
  return out + "</Relationships>";
}

std::string empty_tree(const std::string& body) {
  return "<p:cSld><p:spTree>" + nv("p:nvGrpSpPr", "p:cNvGrpSpPr", 1, "") +
         "<p:grpSpPr/>" + body + "</p:spTree></p:cSld>";
}

std::string workbook_bytes() {
  ZipWriter w;
  w.add("[Content_Types].xml",
        kDecl + "<Types xmlns=\"http://schemas.openxmlformats.org/package/2006/content-types\">"
                "<Default Extension=\"rels\" ContentType=\"application/vnd.openxmlformats-package.relationships+xml\"/>"
                "<Default Extension=\"xml\" ContentType=\"application/xml\"/>"
                "<Override PartName=\"/xl/workbook.xml\" ContentType=\"application/vnd.openxmlformats-officedocument.spreadsheetml.sheet.main+xml\"/>"
                "<Override PartName=\"/xl/worksheets/sheet1.xml\" ContentType=\"application/vnd.openxmlformats-officedocument.spreadsheetml.worksheet+xml\"/>"
                "</Types>");
  w.add("_rels/.rels", rels_xml({{"rId1", "officeDocument", "xl/workbook.xml", false}}));
  w.add("xl/workbook.xml",
        kDecl + "<workbook xmlns=\"http://schemas.openxmlformats.org/spreadsheetml/2006/main\" "
                "xmlns:r=\"" + kRelBase.substr(0, kRelBase.size() - 1) +
            "\"><sheets><sheet name=\"Sheet1\" sheetId=\"1\" r:id=\"rId1\"/></sheets></workbook>");
  w.add("xl/_rels/workbook.xml.rels", rels_xml({{"rId1", "worksheet", "worksheets/sheet1.xml", false}}));
  w.add("xl/worksheets/sheet1.xml",
        kDecl + "<worksheet xmlns=\"http://schemas.openxmlformats.org/spreadsheetml/2006/main\"><sheetData>"
                "<row r=\"1\"><c r=\"A1\" t=\"inlineStr\"><is><t>Quarter</t></is></c><c r=\"B1\" t=\"inlineStr\"><is><t>Revenue</t></is></c></row>"
                "<row r=\"2\"><c r=\"A2\" t=\"inlineStr\"><is><t>Q1</t></is></c><c r=\"B2\"><v>12</v></c></row>"
                "<row r=\"3\"><c r=\"A3\" t=\"inlineStr\"><is><t>Q2</t></is></c><c r=\"B3\"><v>17</v></c></row>"
                "</sheetData></worksheet>");
  const auto bytes = w.finish();
  return {bytes.begin(), bytes.end()};
}

std::string chart_xml(bool external_data) {
  std::string out =
      kDecl +
      "<c:chartSpace xmlns:c=\"http://schemas.openxmlformats.org/drawingml/2006/chart\" "
      "xmlns:a=\"http://schemas.openxmlformats.org/drawingml/2006/main\" "
      "xmlns:r=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships\">"
      "<c:chart><c:plotArea><c:layout/><c:barChart><c:barDir val=\"col\"/><c:grouping val=\"clustered\"/>"
      "<c:ser><c:idx val=\"0\"/><c:order val=\"0\"/>"
      "<c:cat><c:strRef><c:f>Sheet1!$A$2:$A$3</c:f></c:strRef></c:cat>"
      "<c:val><c:numRef><c:f>Sheet1!$B$2:$B$3</c:f></c:numRef></c:val></c:ser>"
      "<c:axId val=\"1\"/><c:axId val=\"2\"/></c:barChart></c:plotArea></c:chart>";
  if (external_data) out += "<c:externalData r:id=\"rId1\"><c:autoUpdate val=\"0\"/></c:externalData>";
  return out + "</c:chartSpace>";
}

const std::string kTiming =
    "<p:timing><p:tnLst><p:par><p:cTn id=\"1\" dur=\"indefinite\" restart=\"never\" nodeType=\"tmRoot\">"
    "<p:childTnLst><p:seq concurrent=\"1\" nextAc=\"seek\"><p:cTn id=\"2\" dur=\"indefinite\" nodeType=\"mainSeq\">"
    "<p:childTnLst><p:par><p:cTn id=\"3\" fill=\"hold\"><p:stCondLst><p:cond delay=\"indefinite\"/></p:stCondLst>"
    "<p:childTnLst><p:par><p:cTn id=\"4\" presetID=\"10\" presetClass=\"entr\" fill=\"hold\" nodeType=\"clickEffect\">"
    "<p:stCondLst><p:cond delay=\"0\"/></p:stCondLst><p:childTnLst>"
    "<p:set><p:cBhvr><p:cTn id=\"5\" dur=\"1\" fill=\"hold\"/><p:tgtEl><p:spTgt spid=\"2\"/></p:tgtEl>"
    "<p:attrNameLst><p:attrName>style.visibility</p:attrName></p:attrNameLst></p:cBhvr>"
    "<p:to><p:strVal val=\"visible\"/></p:to></p:set>"
    "<p:animEffect transition=\"in\" filter=\"fade\"><p:cBhvr><p:cTn id=\"6\" dur=\"500\"/>"
    "<p:tgtEl><p:spTgt spid=\"2\"/></p:tgtEl></p:cBhvr></p:animEffect>"
    "</p:childTnLst></p:cTn></p:par></p:childTnLst></p:cTn></p:par></p:childTnLst></p:cTn>"
    "<p:prevCondLst><p:cond evt=\"onPrev\" delay=\"0\"><p:tgtEl><p:sldTgt/></p:tgtEl></p:cond></p:prevCondLst>"
    "<p:nextCondLst><p:cond evt=\"onNext\" delay=\"0\"><p:tgtEl><p:sldTgt/></p:tgtEl></p:cond></p:nextCondLst>"
    "</p:seq></p:childTnLst></p:cTn></p:par></p:tnLst></p:timing>";

}  // namespace

PackageBuilder::PackageBuilder(double width, double height) : width_(width), height_(height) {
  if (!(width > 0 && height > 0)) throw std::invalid_argument("slide size must be positive");
}

std::size_t PackageBuilder::add_slide() {
  slides_.emplace_back();
  return slides_.size() - 1;
}

PackageBuilder::SlideState& PackageBuilder::at(std::size_t slide) {
  if (slide >= slides_.size()) throw std::out_of_range("no slide " + std::to_string(slide));
  return slides_[slide];
}

std::string PackageBuilder::add_rel(SlideState& s, const std::string& type,
                                    const std::string& target, bool external) {
  for (const auto& r : s.rels) {
    if (r.type == type && r.target == target && r.external == external) return r.id;
  }
  // rId1 is the layout
  const std::string id = "rId" + std::to_string(s.rels.size() + 2);
  s.rels.push_back({id, type, target, external});
  return id;
}

std::string PackageBuilder::media_part(const std::string& name) {
  std::string n = name.empty() ? "image" + std::to_string(media_.size() + 1) + ".png" : name;
  if (std::find(media_.begin(), media_.end(), n) == media_.end()) media_.push_back(n);
  return n;
}

void PackageBuilder::text_box(std::size_t slide, const Rect& r,
                              const std::vector<std::string>& paragraphs) {
  auto& s = at(slide);
  const int id = s.next_id++;
  std::string body = "<p:txBody><a:bodyPr wrap=\"square\"/><a:lstStyle/>";
  for (const auto& p : paragraphs) {
    body += "<a:p><a:r><a:rPr lang=\"en-US\" dirty=\"0\"/><a:t>" + xml_escape(p) + "</a:t></a:r></a:p>";
  }
  body += "</p:txBody>";
  s.shapes.push_back("<p:sp>" + nv("p:nvSpPr", "p:cNvSpPr txBox=\"1\"", id, "TextBox " + std::to_string(id)) +
                     "<p:spPr>" + xfrm(r) + "<a:prstGeom prst=\"rect\"><a:avLst/></a:prstGeom><a:noFill/></p:spPr>" +
                     body + "</p:sp>");
}

void PackageBuilder::shape(std::size_t slide, const Rect& r, const std::string& geometry,
                           const std::string& color) {
  auto& s = at(slide);
  const int id = s.next_id++;
  s.shapes.push_back("<p:sp>" + nv("p:nvSpPr", "p:cNvSpPr", id, "Shape " + std::to_string(id)) +
                     "<p:spPr>" + xfrm(r) + "<a:prstGeom prst=\"" + geometry +
                     "\"><a:avLst/></a:prstGeom><a:solidFill><a:srgbClr val=\"" + color +
                     "\"/></a:solidFill></p:spPr></p:sp>");
}

void PackageBuilder::freeform(std::size_t slide, const Rect& r) {
  auto& s = at(slide);
  const int id = s.next_id++;
  s.shapes.push_back("<p:sp>" + nv("p:nvSpPr", "p:cNvSpPr", id, "Freeform " + std::to_string(id)) +
                     "<p:spPr>" + xfrm(r) +
                     "<a:custGeom><a:avLst/><a:gdLst/><a:rect l=\"0\" t=\"0\" r=\"r\" b=\"b\"/><a:pathLst>"
                     "<a:path w=\"100\" h=\"100\"><a:moveTo><a:pt x=\"0\" y=\"100\"/></a:moveTo>"
                     "<a:lnTo><a:pt x=\"50\" y=\"0\"/></a:lnTo><a:lnTo><a:pt x=\"100\" y=\"100\"/></a:lnTo>"
                     "<a:close/></a:path></a:pathLst></a:custGeom>"
                     "<a:solidFill><a:srgbClr val=\"ED7D31\"/></a:solidFill></p:spPr></p:sp>");
}

void PackageBuilder::connector(std::size_t slide, const Rect& r) {
  auto& s = at(slide);
  const int id = s.next_id++;
  s.shapes.push_back("<p:cxnSp>" + nv("p:nvCxnSpPr", "p:cNvCxnSpPr", id, "Connector " + std::to_string(id)) +
                     "<p:spPr>" + xfrm(r) +
                     "<a:prstGeom prst=\"line\"><a:avLst/></a:prstGeom></p:spPr></p:cxnSp>");
}

void PackageBuilder::picture(std::size_t slide, const Rect& r, const std::string& media_name) {
  auto& s = at(slide);
  const int id = s.next_id++;
  const std::string part = media_part(media_name);
  const std::string rid = add_rel(s, "image", "../media/" + part);
  s.shapes.push_back("<p:pic>" + nv("p:nvPicPr", "p:cNvPicPr", id, "Picture " + std::to_string(id)) +
                     "<p:blipFill><a:blip r:embed=\"" + rid +
                     "\"/><a:stretch><a:fillRect/></a:stretch></p:blipFill><p:spPr>" + xfrm(r) +
                     "<a:prstGeom prst=\"rect\"><a:avLst/></a:prstGeom></p:spPr></p:pic>");
}

void PackageBuilder::svg_picture(std::size_t slide, const Rect& r) {
  auto& s = at(slide);
  const int id = s.next_id++;
  const std::string part = media_part("");
  const std::string rid = add_rel(s, "image", "../media/" + part);
  s.shapes.push_back(
      "<p:pic>" + nv("p:nvPicPr", "p:cNvPicPr", id, "Graphic " + std::to_string(id)) +
      "<p:blipFill><a:blip r:embed=\"" + rid +
      "\"><a:extLst><a:ext uri=\"{96DAC541-7B7A-43D3-8B79-37D633B846F1}\">"
      "<asvg:svgBlip xmlns:asvg=\"http://schemas.microsoft.com/office/drawing/2016/SVG/main\" r:embed=\"" +
      rid + "\"/></a:ext></a:extLst></a:blip><a:stretch><a:fillRect/></a:stretch></p:blipFill><p:spPr>" +
      xfrm(r) + "<a:prstGeom prst=\"rect\"><a:avLst/></a:prstGeom></p:spPr></p:pic>");
}

void PackageBuilder::group(std::size_t slide, const Rect& r, int members) {
  if (members < 1) throw std::invalid_argument("a group needs at least one member");
  auto& s = at(slide);
  const int id = s.next_id++;
  std::string body = "<p:grpSp>" + nv("p:nvGrpSpPr", "p:cNvGrpSpPr", id, "Group " + std::to_string(id)) +
                     "<p:grpSpPr><a:xfrm><a:off x=\"" + emu(r.x) + "\" y=\"" + emu(r.y) +
                     "\"/><a:ext cx=\"" + emu(r.cx) + "\" cy=\"" + emu(r.cy) + "\"/><a:chOff x=\"" +
                     emu(r.x) + "\" y=\"" + emu(r.y) + "\"/><a:chExt cx=\"" + emu(r.cx) + "\" cy=\"" +
                     emu(r.cy) + "\"/></a:xfrm></p:grpSpPr>";
  const double w = r.cx / members;
  for (int i = 0; i < members; ++i) {
    const int mid = s.next_id++;
    const Rect m{r.x + i * w, r.y, w * 0.8, r.cy};
    body += "<p:sp>" + nv("p:nvSpPr", "p:cNvSpPr", mid, "Icon " + std::to_string(mid)) + "<p:spPr>" +
            xfrm(m) + "<a:prstGeom prst=\"ellipse\"><a:avLst/></a:prstGeom><a:solidFill><a:srgbClr val=\"70AD47\"/></a:solidFill></p:spPr></p:sp>";
  }
  s.shapes.push_back(body + "</p:grpSp>");
}

void PackageBuilder::chart(std::size_t slide, const Rect& r, WorkbookLink link) {
  auto& s = at(slide);
  const int id = s.next_id++;
  charts_.push_back({link});
  const std::string rid = add_rel(s, "chart", "../charts/chart" + std::to_string(charts_.size()) + ".xml");
  s.shapes.push_back(
      "<p:graphicFrame>" + nv("p:nvGraphicFramePr", "p:cNvGraphicFramePr", id, "Chart " + std::to_string(id)) +
      xfrm(r, "p:xfrm") +
      "<a:graphic><a:graphicData uri=\"http://schemas.openxmlformats.org/drawingml/2006/chart\">"
      "<c:chart xmlns:c=\"http://schemas.openxmlformats.org/drawingml/2006/chart\" r:id=\"" +
      rid + "\"/></a:graphicData></a:graphic></p:graphicFrame>");
}

void PackageBuilder::external_video(std::size_t slide, const Rect& r, const std::string& path) {
  auto& s = at(slide);
  const int id = s.next_id++;
  const std::string poster = media_part("");
  const std::string img = add_rel(s, "image", "../media/" + poster);
  const std::string vid = add_rel(s, "video", path, true);
  s.shapes.push_back("<p:pic>" +
                     nv("p:nvPicPr", "p:cNvPicPr", id, "Video " + std::to_string(id),
                        "<a:videoFile r:link=\"" + vid + "\"/>") +
                     "<p:blipFill><a:blip r:embed=\"" + img +
                     "\"/><a:stretch><a:fillRect/></a:stretch></p:blipFill><p:spPr>" + xfrm(r) +
                     "<a:prstGeom prst=\"rect\"><a:avLst/></a:prstGeom></p:spPr></p:pic>");
}

void PackageBuilder::transition(std::size_t slide) { at(slide).transition = true; }

void PackageBuilder::animation(std::size_t slide) { at(slide).animation = true; }

void PackageBuilder::master_background(const std::string& color) { master_background_ = color; }

std::vector<std::uint8_t> PackageBuilder::build() const {
  if (slides_.empty()) throw std::logic_error("package needs at least one slide");
  ZipWriter zip;

  std::string types =
      kDecl + "<Types xmlns=\"http://schemas.openxmlformats.org/package/2006/content-types\">"
              "<Default Extension=\"rels\" ContentType=\"application/vnd.openxmlformats-package.relationships+xml\"/>"
              "<Default Extension=\"xml\" ContentType=\"application/xml\"/>"
              "<Default Extension=\"png\" ContentType=\"image/png\"/>"
              "<Default Extension=\"xlsx\" ContentType=\"application/vnd.openxmlformats-officedocument.spreadsheetml.sheet\"/>"
              "<Override PartName=\"/ppt/presentation.xml\" ContentType=\"application/vnd.openxmlformats-officedocument.presentationml.presentation.main+xml\"/>"
              "<Override PartName=\"/ppt/slideMasters/slideMaster1.xml\" ContentType=\"application/vnd.openxmlformats-officedocument.presentationml.slideMaster+xml\"/>"
              "<Override PartName=\"/ppt/slideLayouts/slideLayout1.xml\" ContentType=\"application/vnd.openxmlformats-officedocument.presentationml.slideLayout+xml\"/>"
              "<Override PartName=\"/ppt/theme/theme1.xml\" ContentType=\"application/vnd.openxmlformats-officedocument.theme+xml\"/>";
  for (std::size_t i = 1; i <= slides_.size(); ++i) {
    types += "<Override PartName=\"/ppt/slides/slide" + std::to_string(i) +
             ".xml\" ContentType=\"application/vnd.openxmlformats-officedocument.presentationml.slide+xml\"/>";
  }
  for (std::size_t i = 1; i <= charts_.size(); ++i) {
    types += "<Override PartName=\"/ppt/charts/chart" + std::to_string(i) +
             ".xml\" ContentType=\"application/vnd.openxmlformats-officedocument.drawingml.chart+xml\"/>";
  }
  zip.add("[Content_Types].xml", types + "</Types>");
  zip.add("_rels/.rels", rels_xml({{"rId1", "officeDocument", "ppt/presentation.xml", false}}));

  std::string pres = kDecl + "<p:presentation " + kNs +
                     "><p:sldMasterIdLst><p:sldMasterId id=\"2147483648\" r:id=\"rId1\"/></p:sldMasterIdLst><p:sldIdLst>";
  std::vector<std::tuple<std::string, std::string, std::string, bool>> pres_rels = {
      {"rId1", "slideMaster", "slideMasters/slideMaster1.xml", false}};
  for (std::size_t i = 1; i <= slides_.size(); ++i) {
    const std::string rid = "rId" + std::to_string(i + 1);
    pres += "<p:sldId id=\"" + std::to_string(255 + i) + "\" r:id=\"" + rid + "\"/>";
    pres_rels.emplace_back(rid, "slide", "slides/slide" + std::to_string(i) + ".xml", false);
  }
  pres_rels.emplace_back("rId" + std::to_string(slides_.size() + 2), "theme", "theme/theme1.xml", false);
  pres += "</p:sldIdLst><p:sldSz cx=\"" + emu(width_) + "\" cy=\"" + emu(height_) +
          "\"/><p:notesSz cx=\"6858000\" cy=\"9144000\"/></p:presentation>";
  zip.add("ppt/presentation.xml", pres);
  zip.add("ppt/_rels/presentation.xml.rels", rels_xml(pres_rels));

  std::string master_body;
  if (!master_background_.empty()) {
    master_body = "<p:sp>" + nv("p:nvSpPr", "p:cNvSpPr", 2, "Background") + "<p:spPr>" +
                  xfrm({0, 0, width_, height_}) +
                  "<a:prstGeom prst=\"rect\"><a:avLst/></a:prstGeom><a:solidFill><a:srgbClr val=\"" +
                  master_background_ + "\"/></a:solidFill></p:spPr></p:sp>";
  }
  zip.add("ppt/slideMasters/slideMaster1.xml",
          kDecl + "<p:sldMaster " + kNs + ">" + empty_tree(master_body) +
              "<p:clrMap bg1=\"lt1\" tx1=\"dk1\" bg2=\"lt2\" tx2=\"dk2\" accent1=\"accent1\" accent2=\"accent2\" "
              "accent3=\"accent3\" accent4=\"accent4\" accent5=\"accent5\" accent6=\"accent6\" hlink=\"hlink\" folHlink=\"folHlink\"/>"
              "<p:sldLayoutIdLst><p:sldLayoutId id=\"2147483649\" r:id=\"rId1\"/></p:sldLayoutIdLst></p:sldMaster>");
  zip.add("ppt/slideMasters/_rels/slideMaster1.xml.rels",
          rels_xml({{"rId1", "slideLayout", "../slideLayouts/slideLayout1.xml", false},
                    {"rId2", "theme", "../theme/theme1.xml", false}}));
  zip.add("ppt/slideLayouts/slideLayout1.xml",
          kDecl + "<p:sldLayout " + kNs + " type=\"blank\" preserve=\"1\">" + empty_tree("") +
              "<p:clrMapOvr><a:masterClrMapping/></p:clrMapOvr></p:sldLayout>");
  zip.add("ppt/slideLayouts/_rels/slideLayout1.xml.rels",
          rels_xml({{"rId1", "slideMaster", "../slideMasters/slideMaster1.xml", false}}));
  zip.add("ppt/theme/theme1.xml",
          kDecl + "<a:theme xmlns:a=\"http://schemas.openxmlformats.org/drawingml/2006/main\" name=\"Fixture\">"
                  "<a:themeElements><a:clrScheme name=\"Fixture\"><a:dk1><a:srgbClr val=\"000000\"/></a:dk1>"
                  "<a:lt1><a:srgbClr val=\"FFFFFF\"/></a:lt1></a:clrScheme></a:themeElements></a:theme>");

  for (std::size_t i = 0; i < slides_.size(); ++i) {
    const auto& s = slides_[i];
    std::string body;
    for (const auto& sh : s.shapes) body += sh;
    std::string xml = kDecl + "<p:sld " + kNs + ">" + empty_tree(body) +
                      "<p:clrMapOvr><a:masterClrMapping/></p:clrMapOvr>";
    if (s.transition) xml += "<p:transition spd=\"med\"><p:fade/></p:transition>";
    if (s.animation) xml += kTiming;
    xml += "</p:sld>";
    const std::string name = "slide" + std::to_string(i + 1) + ".xml";
    zip.add("ppt/slides/" + name, xml);
    std::vector<std::tuple<std::string, std::string, std::string, bool>> rels = {
        {"rId1", "slideLayout", "../slideLayouts/slideLayout1.xml", false}};
    for (const auto& r : s.rels) rels.emplace_back(r.id, r.type, r.target, r.external);
    zip.add("ppt/slides/_rels/" + name + ".rels", rels_xml(rels));
  }

  const std::string png(reinterpret_cast<const char*>(kPng), sizeof(kPng));
  for (const auto& m : media_) zip.add("ppt/media/" + m, png);

  const std::string workbook = workbook_bytes();
  for (std::size_t i = 1; i <= charts_.size(); ++i) {
    const auto link = charts_[i - 1].link;
    const std::string n = std::to_string(i);
    zip.add("ppt/charts/chart" + n + ".xml", chart_xml(link != WorkbookLink::None));
    if (link == WorkbookLink::None) continue;
    const std::string wb = "Microsoft_Excel_Worksheet" + n + ".xlsx";
    zip.add("ppt/charts/_rels/chart" + n + ".xml.rels",
            rels_xml({{"rId1", "package", "../embeddings/" + wb, false}}));
    if (link == WorkbookLink::Embedded) zip.add("ppt/embeddings/" + wb, workbook);
  }
  return zip.finish();
}

std::vector<std::uint8_t> pdf_stub() {
  const std::string pdf =
      "%PDF-1.4\n1 0 obj << /Type /Catalog /Pages 2 0 R >> endobj\n"
      "2 0 obj << /Type /Pages /Kids [3 0 R] /Count 1 >> endobj\n"
      "3 0 obj << /Type /Page /Parent 2 0 R /MediaBox [0 0 960 540] >> endobj\n"
      "trailer << /Root 1 0 R >>\n%%EOF\n";
  return {pdf.begin(), pdf.end()};
}

std::vector<std::uint8_t> break_workbook_links(const std::vector<std::uint8_t>& package) {
  const ZipArchive in(package);
  ZipWriter out;
  for (const auto& name : in.names()) {
    std::string data = in.read(name);
    if (name.rfind("ppt/charts/_rels/", 0) == 0) {
      const std::string from = "Target=\"../embeddings/";
      for (auto pos = data.find(from); pos != std::string::npos; pos = data.find(from, pos + 1)) {
        data.insert(pos + from.size(), "missing_");
      }
    }
    out.add(name, data);
  }
  return out.finish();
}

namespace {

constexpr double W = kDefaultSlideWidth;
constexpr double H = kDefaultSlideHeight;

Rect box(double x, double y, double cx, double cy) { return {x * W, y * H, cx * W, cy * H}; }

void content_slide(PackageBuilder& b, std::size_t s, int variant) {
  b.text_box(s, box(0.06, 0.06, 0.88, 0.12), {"Quarterly review " + std::to_string(variant + 1)});
  b.text_box(s, box(0.06, 0.22, 0.5, 0.6),
             {"Revenue grew in every region", "Costs held flat", "Outlook remains positive"});
}

// text + distinct vector shapes + a grouped icon cluster, background in master
PackageBuilder structured_deck(int slides) {
  PackageBuilder b;
  b.master_background("F2F2F2");
  for (int i = 0; i < slides; ++i) {
    const auto s = b.add_slide();
    content_slide(b, s, i);
    b.shape(s, box(0.6 + 0.02 * i, 0.25 + 0.05 * i, 0.15, 0.1), i % 2 ? "ellipse" : "roundRect");
    b.group(s, box(0.6, 0.7, 0.3, 0.1), 3);
  }
  return b;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"l0",
          "l1",
          "l2",
          "l3",
          "l4",
          "l5",
          "l5_broken_workbook",
          "t1_multi_paragraph",
          "t1_fragmented",
          "t1_rasterized",
          "t2_shapes",
          "t2_raster_only",
          "t2_icons_and_photo",
          "t3_master_grouped",
          "t3_logo_copied",
          "t3_loose_shapes",
          "t4_chart",
          "t4_mimicry",
          "t4_missing_workbook",
          "t5_fade",
          "t5_static",
          "t5_external_video"};
}

std::string fixture_filename(const std::string& name) {
  return name + (name == "l0" ? ".pdf" : ".pptx");
}

std::vector<std::uint8_t> build_fixture(const std::string& name) {
  if (name == "l0") return pdf_stub();

  if (name == "l1" || name == "t2_raster_only") {
    // readable text, but every graphic is a screenshot
    PackageBuilder b;
    for (int i = 0; i < 3; ++i) {
      const auto s = b.add_slide();
      content_slide(b, s, i);
      b.picture(s, box(0.6, 0.25, 0.35, 0.5));
    }
    return b.build();
  }
  if (name == "l2") {
    // the logo is pasted onto every slide instead of living in the master
    PackageBuilder b;
    for (int i = 0; i < 3; ++i) {
      const auto s = b.add_slide();
      content_slide(b, s, i);
      b.shape(s, box(0.6, 0.3, 0.2, 0.3), "triangle");
      b.picture(s, box(0.9, 0.02, 0.08, 0.08), "logo.png");
    }
    return b.build();
  }
  if (name == "l3" || name == "t3_master_grouped") return structured_deck(3).build();
  if (name == "l4" || name == "t4_chart") {
    auto b = structured_deck(3);
    b.chart(1, box(0.06, 0.5, 0.45, 0.4));
    return b.build();
  }
  if (name == "l5") {
    auto b = structured_deck(3);
    b.chart(1, box(0.06, 0.5, 0.45, 0.4));
    for (std::size_t i = 0; i < b.slide_count(); ++i) b.transition(i);
    return b.build();
  }
  if (name == "l5_broken_workbook") return break_workbook_links(build_fixture("l5"));

  if (name == "t1_multi_paragraph") {
    PackageBuilder b;
    const auto s = b.add_slide();
    b.text_box(s, box(0.08, 0.1, 0.8, 0.7),
               {"First point", "Second point", "Third point", "Fourth point", "Fifth point", "Sixth point"});
    return b.build();
  }
  if (name == "t1_fragmented") {
    PackageBuilder b;
    const auto s = b.add_slide();
    const char* lines[] = {"First point", "Second point", "Third point",
                           "Fourth point", "Fifth point", "Sixth point"};
    for (int i = 0; i < 6; ++i) {
      b.text_box(s, box(0.08 + (i % 2) * 0.003, 0.1 + 0.09 * i, 0.8, 0.06), {lines[i]});
    }
    return b.build();
  }
  if (name == "t1_rasterized") {
    PackageBuilder b;
    for (int i = 0; i < 3; ++i) b.picture(b.add_slide(), box(0, 0, 1, 1));
    return b.build();
  }
  if (name == "t2_shapes") {
    PackageBuilder b;
    for (int i = 0; i < 2; ++i) {
      const auto s = b.add_slide();
      content_slide(b, s, i);
      b.shape(s, box(0.6, 0.3, 0.2, 0.2), "rect");
      b.shape(s, box(0.6, 0.6, 0.2, 0.2), "chevron");
    }
    return b.build();
  }
  if (name == "t2_icons_and_photo") {
    PackageBuilder b;
    const auto s = b.add_slide();
    content_slide(b, s, 0);
    b.svg_picture(s, box(0.6, 0.2, 0.08, 0.08));
    b.freeform(s, box(0.7, 0.2, 0.08, 0.08));
    b.connector(s, box(0.6, 0.35, 0.2, 0));
    b.picture(s, box(0.6, 0.45, 0.35, 0.4));
    return b.build();
  }
  if (name == "t3_logo_copied") {
    PackageBuilder b;
    for (int i = 0; i < 10; ++i) {
      const auto s = b.add_slide();
      content_slide(b, s, i);
      b.shape(s, box(0.88, 0.03, 0.09, 0.09), "ellipse", "C00000");
    }
    return b.build();
  }
  if (name == "t3_loose_shapes") {
    PackageBuilder b;
    const auto s = b.add_slide();
    for (int i = 0; i < 30; ++i) {
      b.shape(s, box(0.05 + 0.15 * (i % 6), 0.1 + 0.17 * (i / 6), 0.1, 0.1), "ellipse");
    }
    return b.build();
  }
  if (name == "t4_mimicry") {
    auto b = structured_deck(3);
    const double heights[] = {0.2, 0.35, 0.28, 0.4};
    for (int i = 0; i < 4; ++i) {
      b.shape(1, box(0.1 + 0.08 * i, 0.9 - heights[i], 0.05, heights[i]), "rect", "5B9BD5");
    }
    return b.build();
  }
  if (name == "t4_missing_workbook") {
    auto b = structured_deck(3);
    b.chart(1, box(0.06, 0.5, 0.45, 0.4), WorkbookLink::Missing);
    return b.build();
  }
  if (name == "t5_fade" || name == "t5_static" || name == "t5_external_video") {
    auto b = structured_deck(3);
    b.chart(1, box(0.06, 0.5, 0.45, 0.4));
    if (name == "t5_fade") {
      for (std::size_t i = 0; i < b.slide_count(); ++i) b.transition(i);
    } else if (name == "t5_external_video") {
      b.animation(0);
      b.external_video(2, box(0.1, 0.5, 0.4, 0.3), "file:///C:/Users/presenter/Videos/demo.mp4");
    }
    return b.build();
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace slidebench::pei
