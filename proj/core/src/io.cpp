#include "circsep/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace circsep {

namespace {

using nlohmann::json;

std::vector<Segment> parse_segments(const json& arr, const char* set_name) {
    if (!arr.is_array()) throw ParseError(std::string(set_name) + " must be an array of segments");
    std::vector<Segment> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != 2 ||
            !e[1].is_array() || e[1].size() != 2) {
            throw ParseError(std::string("segment of ") + set_name +
                             " must be [[x1,y1],[x2,y2]]");
        }
        const Segment s{{e[0][0].get<double>(), e[0][1].get<double>()},
                        {e[1][0].get<double>(), e[1][1].get<double>()}};
        if (!is_finite(s.a) || !is_finite(s.b)) {
            throw ParseError(std::string(set_name) + " contains non-finite coordinates");
        }
        out.push_back(s);
    }
    return out;
}

json segments_json(const std::vector<Segment>& segs) {
    json arr = json::array();
    for (const Segment& s : segs) {
        arr.push_back(json::array({json::array({s.a.x, s.a.y}), json::array({s.b.x, s.b.y})}));
    }
    return arr;
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid document: ") + e.what());
    }
    if (!doc.contains("P")) throw ParseError("P must be nonempty");
    if (!doc.contains("Q")) throw ParseError("Q must be nonempty");
    Instance inst;
    inst.P = parse_segments(doc["P"], "P");
    inst.Q = parse_segments(doc["Q"], "Q");
    if (inst.P.empty()) throw ParseError("P must be nonempty");
    if (inst.Q.empty()) throw ParseError("Q must be nonempty");
    if (doc.contains("meta")) {
        const auto& meta = doc["meta"];
        if (meta.contains("name")) inst.name = meta["name"].get<std::string>();
        if (meta.contains("seed")) inst.seed = meta["seed"].get<std::uint64_t>();
    }
    return inst;
}

std::string write_instance_text(const Instance& inst) {
    json doc;
    doc["P"] = segments_json(inst.P);
    doc["Q"] = segments_json(inst.Q);
    json meta;
    if (!inst.name.empty()) meta["name"] = inst.name;
    if (inst.seed) meta["seed"] = *inst.seed;
    if (!meta.is_null()) doc["meta"] = meta;
    return doc.dump(2) + "\n";
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

std::string write_result_text(const std::vector<SeparatingCircle>& circles,
                              double wall_time_ms) {
    json records = json::array();
    int largest = -1;
    double best_r = -1.0;
    for (std::size_t i = 0; i < circles.size(); ++i) {
        const SeparatingCircle& sc = circles[i];
        if (sc.circle.radius > best_r) {
            best_r = sc.circle.radius;
            largest = static_cast<int>(i);
        }
        json contacts = json::array();
        for (const Contact& c : sc.contacts) {
            contacts.push_back({{"set", to_string(c.set)},
                                {"site_index", c.segment_index},
                                {"point", json::array({c.point.x, c.point.y})}});
        }
        records.push_back(
            {{"center", json::array({sc.circle.center.x, sc.circle.center.y})},
             {"radius", sc.circle.radius},
             {"inside", to_string(sc.inside)},
             {"condition", to_string(sc.condition)},
             {"contacts", contacts},
             {"source",
              {{"kind", sc.source.kind == SeparatingCircle::Source::Kind::Vertex ? "vertex"
                                                                                 : "edge"},
               {"id", sc.source.id}}}});
    }
    json doc;
    doc["records"] = records;
    doc["summary"] = {{"count", circles.size()},
                      {"largest_index", largest},
                      {"wall_time_ms", wall_time_ms}};
    return doc.dump(2) + "\n";
}

ParsedResult parse_result_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid result document: ") + e.what());
    }
    ParsedResult out;
    for (const auto& r : doc.at("records")) {
        ParsedRecord rec;
        rec.center = {r.at("center")[0].get<double>(), r.at("center")[1].get<double>()};
        rec.radius = r.at("radius").get<double>();
        rec.inside = r.at("inside").get<std::string>() == "P" ? SideSet::P : SideSet::Q;
        rec.condition = r.at("condition").get<std::string>();
        out.records.push_back(rec);
    }
    out.count = doc.at("summary").at("count").get<std::size_t>();
    out.largest_index = doc.at("summary").at("largest_index").get<int>();
    return out;
}

std::string render_svg(const Instance& inst, const std::vector<SeparatingCircle>& circles) {
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    auto grow = [&](Point2 p) {
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
    };
    for (const auto* set : {&inst.P, &inst.Q}) {
        for (const Segment& s : *set) {
            grow(s.a);
            grow(s.b);
        }
    }
    const double cx = (lo_x + hi_x) / 2.0, cy = (lo_y + hi_y) / 2.0;
    double half = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6}) * 0.75;  // bbox inflated 1.5x
    for (const SeparatingCircle& sc : circles) {
        half = std::max({half, std::abs(sc.circle.center.x - cx) + sc.circle.radius,
                         std::abs(sc.circle.center.y - cy) + sc.circle.radius});
    }
    const double vx = cx - half, vy = cy - half, vs = 2.0 * half;
    const double sw = vs / 400.0;  // stroke width in world units

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << vx << " " << -(vy + vs)
        << " " << vs << " " << vs << "\">\n";
    svg << "<g transform=\"scale(1,-1)\">\n";
    auto seg_style = [&](const char* color) {
        return std::string("stroke=\"") + color + "\" stroke-width=\"" +
               std::to_string(2.0 * sw) + "\" stroke-linecap=\"round\"";
    };
    for (const Segment& s : inst.P) {
        svg << "<line x1=\"" << s.a.x << "\" y1=\"" << s.a.y << "\" x2=\"" << s.b.x
            << "\" y2=\"" << s.b.y << "\" " << seg_style("#1f77b4") << "/>\n";
    }
    for (const Segment& s : inst.Q) {
        svg << "<line x1=\"" << s.a.x << "\" y1=\"" << s.a.y << "\" x2=\"" << s.b.x
            << "\" y2=\"" << s.b.y << "\" " << seg_style("#d62728") << "/>\n";
    }
    for (const SeparatingCircle& sc : circles) {
        svg << "<circle cx=\"" << sc.circle.center.x << "\" cy=\"" << sc.circle.center.y
            << "\" r=\"" << sc.circle.radius << "\" fill=\"none\" stroke=\"#2ca02c\""
            << " stroke-width=\"" << sw << "\"";
        if (sc.inside == SideSet::Q) {
            svg << " stroke-dasharray=\"" << 4.0 * sw << " " << 3.0 * sw << "\"";
        }
        svg << "/>\n";
        for (const Contact& c : sc.contacts) {
            svg << "<circle cx=\"" << c.point.x << "\" cy=\"" << c.point.y << "\" r=\""
                << 1.5 * sw << "\" fill=\"#000\"/>\n";
        }
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace circsep
