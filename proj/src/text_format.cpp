#include "exclusion/text_format.hpp"

#include "exclusion/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace exclusion::io {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool done() {
        skip_space();
        return pos_ >= text_.size();
    }
    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            error(std::string("expected '") + c + "'");
    }
    void expect_word(std::string_view word) {
        skip_space();
        if (text_.substr(pos_, word.size()) != word)
            error("expected '" + std::string(word) + "'");
        pos_ += word.size();
    }
    std::string_view until(char c) {
        const auto end = text_.find(c, pos_);
        if (end == std::string_view::npos)
            error(std::string("missing '") + c + "'");
        auto out = text_.substr(pos_, end - pos_);
        pos_ = end;
        return out;
    }
    std::vector<Variable> varlist() {
        std::vector<Variable> out;
        while (true) {
            skip_space();
            const auto start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            if (pos_ == start)
                break;
            const auto name = text_.substr(start, pos_ - start);
            if (!Variable::is_identifier(name))
                error("invalid identifier '" + std::string(name) + "'");
            out.emplace_back(std::string(name));
        }
        if (out.empty())
            error("expected at least one variable");
        return out;
    }
    [[noreturn]] void error(const std::string& what) const {
        throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

Row split_cells(std::string_view line) {
    Row cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            return cells;
        }
        cells.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

Atom parse_atom(std::string_view text) {
    Cursor in(text);
    in.expect_word("excl");
    Rational degree;
    if (in.accept('[')) {
        degree = Rational::parse(trim(in.until(']')));
        in.expect(']');
    }
    in.expect('(');
    auto left = in.varlist();
    in.expect(';');
    auto right = in.varlist();
    in.expect(')');
    if (!in.done())
        in.error("trailing characters");
    if (left.size() != right.size())
        throw ParseError("atom sides differ in length (" + std::to_string(left.size()) + " vs " +
                         std::to_string(right.size()) + ") in '" + std::string(text) + "'");
    return Atom(VarTuple(std::move(left)), VarTuple(std::move(right)), degree);
}

std::string render_atom(const Atom& a) {
    std::string out = "excl";
    if (!a.degree().is_zero())
        out += "[" + a.degree().to_string() + "]";
    out += "(" + a.left().to_string() + " ; " + a.right().to_string() + ")";
    return out;
}

std::string render_notation(const Atom& a) {
    if (a.degree().is_zero())
        return a.left().to_string() + " | " + a.right().to_string();
    return a.left().to_string() + " |[" + a.degree().to_string() + "]| " + a.right().to_string();
}

std::vector<Atom> parse_assumptions(std::string_view text) {
    std::vector<Atom> out;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = lines[i];
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        try {
            out.push_back(parse_atom(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(i + 1) + ": " + e.what());
        } catch (const ArityError& e) {
            throw ParseError("line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

std::vector<Atom> read_assumptions_file(const std::string& path) { return parse_assumptions(read_file(path)); }

Team parse_team_csv(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && trim(lines[i]).empty())
        ++i;
    if (i == lines.size())
        throw ParseError("CSV has no header row");
    std::vector<Variable> schema;
    for (const auto& cell : split_cells(lines[i])) {
        const auto name = trim(cell);
        if (!Variable::is_identifier(name))
            throw ParseError("CSV header '" + std::string(name) + "' is not a valid identifier");
        schema.emplace_back(std::string(name));
    }
    Team team(std::move(schema));
    for (++i; i < lines.size(); ++i) {
        if (lines[i].empty())
            continue;
        auto cells = split_cells(lines[i]);
        if (cells.size() != team.schema().size())
            throw ParseError("CSV line " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) +
                             " cells, expected " + std::to_string(team.schema().size()));
        team.insert(std::move(cells));
    }
    return team;
}

Team read_team_csv_file(const std::string& path) { return parse_team_csv(read_file(path)); }

std::string render_team_csv(const Team& team) {
    std::string out;
    for (std::size_t c = 0; c < team.schema().size(); ++c) {
        if (c)
            out += ',';
        out += team.schema()[c].name();
    }
    out += '\n';
    for (const auto& row : team.rows()) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << content;
}

}  // namespace exclusion::io
