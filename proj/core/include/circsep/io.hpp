#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circsep/geom.hpp"
#include "circsep/separator.hpp"

namespace circsep {

class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct Instance {
    std::vector<Segment> P, Q;
    std::string name;
    std::optional<std::uint64_t> seed;
};

/// Parses the instance document: {"P": [[[x,y],[x,y]], ...], "Q": [...],
/// "meta": {...}}. Zero-length segments are point sites. Throws ParseError on
/// malformed documents, non-finite coordinates, or empty P/Q.
Instance parse_instance_text(const std::string& text);
std::string write_instance_text(const Instance& inst);

Instance load_instance_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

/// Record list mirrored from SeparatingCircle, for the result document.
struct ParsedRecord {
    Point2 center;
    double radius = 0.0;
    SideSet inside = SideSet::P;
    std::string condition;
};

struct ParsedResult {
    std::vector<ParsedRecord> records;
    std::size_t count = 0;
    int largest_index = -1;
};

std::string write_result_text(const std::vector<SeparatingCircle>& circles, double wall_time_ms);
ParsedResult parse_result_text(const std::string& text);

/// Static figure: input segments in two colors, output circles (solid for the
/// P-inside run, dashed for the Q-inside run), contact points marked.
std::string render_svg(const Instance& inst, const std::vector<SeparatingCircle>& circles);

}  // namespace circsep
