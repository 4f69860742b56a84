#include <fstream>
#include <sstream>

#include "gmv/error.hpp"
#include "gmv/frame.hpp"

namespace gmv {

namespace {

void write_frame_body(std::ostringstream& os, const Frame& f) {
  os << "frame " << f.name() << "\n";
  os << "worlds " << f.size() << "\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.successors(Direction::Up, i).for_each([&](std::size_t j) {
      os << "up " << i << " " << j << "\n";
    });
  }
}

bool valid_letter(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
  }
  return s != "true" && s != "false";
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "expected a world index, found '" + tok + "'");
  }
  try {
    return static_cast<std::size_t>(std::stoull(tok));
  } catch (const std::exception&) {
    throw ParseError(line, "world index '" + tok + "' is too large");
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string to_text(const Frame& f) {
  std::ostringstream os;
  write_frame_body(os, f);
  os << "end\n";
  return os.str();
}

std::string to_text(const PointedModel& m) {
  std::ostringstream os;
  write_frame_body(os, m.frame);
  os << "point " << m.point << "\n";
  for (const auto& [letter, set] : m.valuation) {
    os << "val " << letter;
    set.for_each([&](std::size_t w) { os << " " << w; });
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

std::pair<PointedModel, bool> model_from_text(const std::string& text) {
  // Sections must appear in this order; each may repeat only where noted.
  enum Stage { kFrame, kWorlds, kEdges, kClosure, kPoint, kVal, kEnd };
  Stage stage = kFrame;
  std::string name;
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  Closure close;
  std::optional<std::size_t> point;
  std::map<std::string, std::vector<std::size_t>> vals;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  auto advance = [&](Stage to, const std::string& key) {
    if (to < stage) throw ParseError(line_no, "'" + key + "' is out of order");
    stage = to;
  };
  auto world = [&](const std::string& tok) {
    const std::size_t w = parse_index(tok, line_no);
    if (w >= n) {
      throw ParseError(line_no, "world " + std::to_string(w) + " out of range for " +
                                    std::to_string(n) + " worlds");
    }
    return w;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (stage == kEnd) throw ParseError(line_no, "content after 'end'");
    const std::string& key = tok[0];

    if (key == "frame") {
      if (stage != kFrame || tok.size() != 2) throw ParseError(line_no, "expected 'frame <name>'");
      name = tok[1];
      stage = kWorlds;
    } else if (stage == kFrame) {
      throw ParseError(line_no, "file must start with 'frame <name>'");
    } else if (key == "worlds") {
      if (stage != kWorlds || tok.size() != 2) throw ParseError(line_no, "expected 'worlds <n>'");
      n = parse_index(tok[1], line_no);
      if (n == 0) throw ParseError(line_no, "a frame needs at least one world");
      stage = kEdges;
    } else if (stage == kWorlds) {
      throw ParseError(line_no, "expected 'worlds <n>' after the frame line");
    } else if (key == "up") {
      advance(kEdges, key);
      if (tok.size() != 3) throw ParseError(line_no, "expected 'up <i> <j>'");
      edges.emplace_back(world(tok[1]), world(tok[2]));
    } else if (key == "closure") {
      if (stage >= kClosure) throw ParseError(line_no, "'closure' is out of order or repeated");
      stage = kClosure;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (tok[i] == "reflexive") {
          close.reflexive = true;
        } else if (tok[i] == "transitive") {
          close.transitive = true;
        } else {
          throw ParseError(line_no, "unknown closure '" + tok[i] + "'");
        }
      }
    } else if (key == "point") {
      if (stage >= kPoint) throw ParseError(line_no, "'point' is out of order or repeated");
      stage = kPoint;
      if (tok.size() != 2) throw ParseError(line_no, "expected 'point <i>'");
      point = world(tok[1]);
    } else if (key == "val") {
      advance(kVal, key);
      if (tok.size() < 2 || !valid_letter(tok[1])) throw ParseError(line_no, "expected 'val <letter> <i>...'");
      if (vals.count(tok[1])) throw ParseError(line_no, "letter '" + tok[1] + "' given twice");
      auto& ws = vals[tok[1]];
      for (std::size_t i = 2; i < tok.size(); ++i) ws.push_back(world(tok[i]));
    } else if (key == "end") {
      stage = kEnd;
    } else {
      throw ParseError(line_no, "unknown keyword '" + key + "'");
    }
  }
  if (stage != kEnd) throw ParseError(line_no, "missing 'end'");

  PointedModel m{make_frame(n, edges, close, name), {}, point.value_or(0)};
  for (const auto& [letter, ws] : vals) {
    WorldSet s(n);
    for (auto w : ws) s.insert(w);
    m.valuation[letter] = s;
  }
  return {std::move(m), point.has_value()};
}

Frame frame_from_text(const std::string& text) { return model_from_text(text).first.frame; }

void save(const Frame& f, const std::string& path) { write_file(path, to_text(f)); }
void save(const PointedModel& m, const std::string& path) { write_file(path, to_text(m)); }

PointedModel load_model(const std::string& path) {
  auto [m, has_point] = model_from_text(read_file(path));
  if (!has_point) throw ParseError(0, "'" + path + "' has no point line");
  return m;
}

Frame load_frame(const std::string& path) { return frame_from_text(read_file(path)); }

}  // namespace gmv
