#include "gqlab/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace gqlab {

namespace fs = std::filesystem;

uint64_t fnv1a(const void* data, std::size_t len, uint64_t seed) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

uint64_t file_hash(const std::string& path) {
    std::string text = read_text_file(path);
    return fnv1a(text.data(), text.size());
}

void write_text_file(const std::string& path, const std::string& content, bool force) {
    if (!force && fs::exists(path))
        throw error(errc::io_error, path + " already exists (use force to overwrite)");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw error(errc::io_error, "cannot open " + path + " for writing");
    out << content;
    if (!out)
        throw error(errc::io_error, "write to " + path + " failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::io_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

// Line-oriented reader that tracks position for error messages.
class line_reader {
  public:
    line_reader(std::string text, std::string path)
        : text_(std::move(text)), path_(std::move(path)) {}

    // Next non-empty line, or false at end of input.
    bool next(std::string& line) {
        while (pos_ < text_.size()) {
            std::size_t end = text_.find('\n', pos_);
            if (end == std::string::npos)
                end = text_.size();
            line = text_.substr(pos_, end - pos_);
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            pos_ = end + 1;
            ++lineno_;
            if (!line.empty())
                return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw error(errc::io_error,
                    path_ + ":" + std::to_string(lineno_) + ": " + why);
    }

    std::string require(const std::string& what) {
        std::string line;
        if (!next(line))
            fail("unexpected end of file, expected " + what);
        return line;
    }

  private:
    std::string text_;
    std::string path_;
    std::size_t pos_ = 0;
    int lineno_ = 0;
};

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok)
        out.push_back(tok);
    return out;
}

int parse_int(line_reader& r, const std::string& tok) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size())
            r.fail("not an integer: '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        r.fail("not an integer: '" + tok + "'");
    }
}

std::vector<int> parse_ints(line_reader& r, const std::vector<std::string>& toks,
                            std::size_t from = 0) {
    std::vector<int> out;
    for (std::size_t i = from; i < toks.size(); ++i)
        out.push_back(parse_int(r, toks[i]));
    return out;
}

// Rest of the line after the first n space-separated tokens.
std::string tail_after(const std::string& line, int n) {
    std::size_t pos = 0;
    for (int i = 0; i < n; ++i) {
        while (pos < line.size() && line[pos] == ' ')
            ++pos;
        while (pos < line.size() && line[pos] != ' ')
            ++pos;
    }
    while (pos < line.size() && line[pos] == ' ')
        ++pos;
    return line.substr(pos);
}

} // namespace

std::string group_text(const group_table& g) {
    std::ostringstream out;
    out << "group " << g.n << "\n";
    for (int a = 0; a < g.n; ++a) {
        for (int b = 0; b < g.n; ++b)
            out << (b ? " " : "") << g.mul(a, b);
        out << "\n";
    }
    for (int i = 0; i < int(g.labels.size()); ++i)
        if (!g.labels[i].empty())
            out << "label " << i << " " << g.labels[i] << "\n";
    return out.str();
}

void write_group(const std::string& path, const group_table& g, bool force) {
    write_text_file(path, group_text(g), force);
}

group_table read_group(const std::string& path) {
    line_reader r(read_text_file(path), path);
    auto head = split_ws(r.require("group header"));
    if (head.size() != 2 || head[0] != "group")
        r.fail("expected 'group <n>'");
    int n = parse_int(r, head[1]);
    if (n < 1 || n > kMaxGroupOrder)
        r.fail("group order " + std::to_string(n) + " out of range");
    std::vector<std::vector<int>> table(n);
    for (int a = 0; a < n; ++a) {
        auto row = parse_ints(r, split_ws(r.require("table row " + std::to_string(a))));
        if (int(row.size()) != n)
            r.fail("row " + std::to_string(a) + " has " + std::to_string(row.size()) +
                   " entries, expected " + std::to_string(n));
        for (int v : row)
            if (v < 0 || v >= n)
                r.fail("entry " + std::to_string(v) + " out of range in row " + std::to_string(a));
        table[a] = std::move(row);
    }
    std::vector<std::string> labels;
    std::string line;
    while (r.next(line)) {
        auto toks = split_ws(line);
        if (toks.size() < 3 || toks[0] != "label")
            r.fail("expected 'label <index> <text>'");
        int i = parse_int(r, toks[1]);
        if (i < 0 || i >= n)
            r.fail("label index " + std::to_string(i) + " out of range");
        labels.resize(n);
        labels[i] = tail_after(line, 2);
    }
    for (int h = 0; h < n; ++h)
        if (table[0][h] != h)
            r.fail("identity must be element 0");
    group_table g = group_from_table(table);
    g.labels = std::move(labels);
    return g;
}

std::string geometry_text(const incidence_geometry& geo) {
    std::ostringstream out;
    out << "geometry " << geo.points << " " << geo.num_lines() << "\n";
    for (const auto& line : geo.lines) {
        for (std::size_t i = 0; i < line.size(); ++i)
            out << (i ? " " : "") << line[i];
        out << "\n";
    }
    for (int i = 0; i < int(geo.point_tags.size()); ++i)
        if (!geo.point_tags[i].empty())
            out << "tag point " << i << " " << geo.point_tags[i] << "\n";
    for (int j = 0; j < int(geo.line_tags.size()); ++j)
        if (!geo.line_tags[j].empty())
            out << "tag line " << j << " " << geo.line_tags[j] << "\n";
    return out.str();
}

void write_geometry(const std::string& path, const incidence_geometry& geo, bool force) {
    write_text_file(path, geometry_text(geo), force);
}

incidence_geometry read_geometry(const std::string& path) {
    line_reader r(read_text_file(path), path);
    auto head = split_ws(r.require("geometry header"));
    if (head.size() != 3 || head[0] != "geometry")
        r.fail("expected 'geometry <P> <L>'");
    int pts = parse_int(r, head[1]);
    int lns = parse_int(r, head[2]);
    if (pts < 1 || lns < 0)
        r.fail("bad geometry dimensions");
    std::vector<std::vector<int>> lines(lns);
    for (int j = 0; j < lns; ++j)
        lines[j] = parse_ints(r, split_ws(r.require("line " + std::to_string(j))));
    incidence_geometry geo;
    try {
        geo = make_geometry(pts, lines);
    } catch (const error& e) {
        throw error(errc::io_error, path + ": " + e.what());
    }
    std::string line;
    while (r.next(line)) {
        auto toks = split_ws(line);
        if (toks.size() < 4 || toks[0] != "tag" || (toks[1] != "point" && toks[1] != "line"))
            r.fail("expected 'tag point|line <index> <text>'");
        int i = parse_int(r, toks[2]);
        std::string text = tail_after(line, 3);
        if (toks[1] == "point") {
            if (i < 0 || i >= pts)
                r.fail("point tag index out of range");
            geo.point_tags.resize(pts);
            geo.point_tags[i] = text;
        } else {
            if (i < 0 || i >= lns)
                r.fail("line tag index out of range");
            geo.line_tags.resize(lns);
            geo.line_tags[i] = text;
        }
    }
    return geo;
}

void write_kantor(const std::string& path, const kantor_family& fam,
                  const std::string& group_path, bool force) {
    std::ostringstream out;
    out << "kantor " << group_path << " " << fam.members.size() << "\n";
    for (int i = 0; i < int(fam.members.size()); ++i) {
        out << "E" << i << ":";
        for (int x : fam.members[i].first)
            out << " " << x;
        out << "\nE" << i << "*:";
        for (int x : fam.members[i].second)
            out << " " << x;
        out << "\n";
    }
    write_text_file(path, out.str(), force);
}

kantor_family read_kantor(const std::string& path) {
    line_reader r(read_text_file(path), path);
    auto head = split_ws(r.require("kantor header"));
    if (head.size() != 3 || head[0] != "kantor")
        r.fail("expected 'kantor <group-file> <t+1>'");
    int count = parse_int(r, head[2]);
    if (count < 1)
        r.fail("member count must be positive");
    fs::path group_path(head[1]);
    if (group_path.is_relative())
        group_path = fs::path(path).parent_path() / group_path;

    kantor_family fam;
    fam.group = read_group(group_path.string());
    for (int i = 0; i < count; ++i) {
        std::string want = "E" + std::to_string(i) + ":";
        std::string want_star = "E" + std::to_string(i) + "*:";
        auto toks = split_ws(r.require("'" + want + "' row"));
        if (toks.empty() || toks[0] != want)
            r.fail("expected '" + want + "'");
        auto e = parse_ints(r, toks, 1);
        toks = split_ws(r.require("'" + want_star + "' row"));
        if (toks.empty() || toks[0] != want_star)
            r.fail("expected '" + want_star + "'");
        auto estar = parse_ints(r, toks, 1);
        for (int x : e)
            if (x < 0 || x >= fam.group.n)
                r.fail("member index " + std::to_string(x) + " out of range");
        for (int x : estar)
            if (x < 0 || x >= fam.group.n)
                r.fail("star index " + std::to_string(x) + " out of range");
        if (!std::is_sorted(e.begin(), e.end()) || !std::is_sorted(estar.begin(), estar.end()))
            r.fail("indices must be ascending");
        fam.members.push_back({std::move(e), std::move(estar)});
    }
    std::string line;
    if (r.next(line))
        r.fail("unexpected trailing content: '" + line + "'");
    if (!fam.members.empty()) {
        fam.s = int(fam.members[0].first.size());
        fam.t = fam.s ? int(fam.members[0].second.size()) / fam.s : 0;
    }
    return fam;
}

void write_aut(const std::string& path, const std::vector<perm_pair>& gens,
               long long order, bool force) {
    std::ostringstream out;
    out << "aut " << gens.size() << " " << order << "\n";
    for (const auto& g : gens) {
        bool first = true;
        for (int v : g.pts) {
            out << (first ? "" : " ") << v;
            first = false;
        }
        for (int v : g.lns)
            out << " " << v;
        out << "\n";
    }
    write_text_file(path, out.str(), force);
}

aut_file read_aut(const std::string& path, int num_points, int num_lines) {
    line_reader r(read_text_file(path), path);
    auto head = split_ws(r.require("aut header"));
    if (head.size() != 3 || head[0] != "aut")
        r.fail("expected 'aut <k> <order>'");
    int k = parse_int(r, head[1]);
    aut_file out;
    try {
        out.order = std::stoll(head[2]);
    } catch (const std::exception&) {
        r.fail("not an integer: '" + head[2] + "'");
    }
    for (int i = 0; i < k; ++i) {
        auto row = parse_ints(r, split_ws(r.require("permutation row")));
        if (int(row.size()) != num_points + num_lines)
            r.fail("permutation row has " + std::to_string(row.size()) + " images, expected " +
                   std::to_string(num_points + num_lines));
        perm_pair g;
        g.pts.assign(row.begin(), row.begin() + num_points);
        g.lns.assign(row.begin() + num_points, row.end());
        out.generators.push_back(std::move(g));
    }
    return out;
}

void write_manifest(const std::string& path, const manifest_file& m, bool force) {
    std::ostringstream out;
    out << "manifest " << (m.complete ? "complete" : "incomplete") << "\n";
    for (const auto& [hash, name] : m.entries)
        out << hash << " " << name << "\n";
    write_text_file(path, out.str(), force);
}

manifest_file read_manifest(const std::string& path) {
    line_reader r(read_text_file(path), path);
    auto head = split_ws(r.require("manifest header"));
    if (head.size() != 2 || head[0] != "manifest" ||
        (head[1] != "complete" && head[1] != "incomplete"))
        r.fail("expected 'manifest complete|incomplete'");
    manifest_file m;
    m.complete = head[1] == "complete";
    std::string line;
    while (r.next(line)) {
        auto toks = split_ws(line);
        if (toks.size() != 2 || toks[0].size() != 16)
            r.fail("expected '<16-hex-hash> <filename>'");
        m.entries.push_back({toks[0], toks[1]});
    }
    return m;
}

} // namespace gqlab
