#include "vbir/report.hpp"

#include "vbir/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vbir::report {

namespace {

using ojson = nlohmann::ordered_json;

std::string header(const Column& c) { return c.unit.empty() ? c.name : c.name + " [" + c.unit + "]"; }

std::string text_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "-";
            } else if constexpr (std::is_same_v<T, double>) {
                return sci(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "yes" : "no";
            } else {
                return v;
            }
        },
        c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

std::string render_table(const Report& r) {
    std::ostringstream os;
    for (std::size_t t = 0; t < r.tables.size(); ++t) {
        const Table& tab = r.tables[t];
        if (t > 0) {
            os << '\n';
        }
        if (!tab.title.empty()) {
            os << tab.title << '\n';
        }
        std::vector<std::vector<std::string>> cells;
        std::vector<std::string> head;
        for (const Column& c : tab.columns) {
            head.push_back(header(c));
        }
        std::vector<std::size_t> width(head.size());
        for (std::size_t j = 0; j < head.size(); ++j) {
            width[j] = head[j].size();
        }
        for (const auto& row : tab.rows) {
            std::vector<std::string> line;
            for (std::size_t j = 0; j < row.size(); ++j) {
                line.push_back(text_cell(row[j]));
                width[j] = std::max(width[j], line.back().size());
            }
            cells.push_back(std::move(line));
        }
        auto emit = [&](const std::vector<std::string>& line) {
            std::string s;
            for (std::size_t j = 0; j < line.size(); ++j) {
                if (j > 0) {
                    s += "  ";
                }
                s += line[j];
                if (j + 1 < line.size()) {
                    s.append(width[j] - line[j].size(), ' ');
                }
            }
            os << s << '\n';
        };
        emit(head);
        std::vector<std::string> rule;
        for (std::size_t w : width) {
            rule.emplace_back(w, '-');
        }
        emit(rule);
        for (const auto& line : cells) {
            emit(line);
        }
    }
    for (const auto& [k, v] : r.notes) {
        os << k << ": " << v << '\n';
    }
    for (const std::string& m : r.messages) {
        os << m << '\n';
    }
    if (r.check_passed) {
        os << "check: " << (*r.check_passed ? "PASS" : "FAIL") << '\n';
    }
    return os.str();
}

std::string render_csv(const Report& r) {
    std::ostringstream os;
    for (std::size_t t = 0; t < r.tables.size(); ++t) {
        const Table& tab = r.tables[t];
        if (r.tables.size() > 1) {
            if (t > 0) {
                os << '\n';
            }
            os << "# " << tab.title << '\n';
        }
        for (std::size_t j = 0; j < tab.columns.size(); ++j) {
            os << (j ? "," : "") << csv_field(header(tab.columns[j]));
        }
        os << '\n';
        for (const auto& row : tab.rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                os << (j ? "," : "") << csv_field(text_cell(row[j]));
            }
            os << '\n';
        }
    }
    return os.str();
}

ojson cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> ojson {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                // JSON has no infinities or NaN.
                return std::isfinite(v) ? ojson(v) : ojson(nullptr);
            } else {
                return v;
            }
        },
        c);
}

Cell json_cell(const ojson& j) {
    if (j.is_null()) {
        return std::monostate{};
    }
    if (j.is_boolean()) {
        return j.get<bool>();
    }
    if (j.is_number_integer()) {
        return j.get<std::int64_t>();
    }
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return j.get<std::string>();
    }
    throw ConfigError("report: unsupported cell value " + j.dump());
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("report row has " + std::to_string(row.size()) + " cells, table has " +
                                    std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

Format parse_format(std::string_view s) {
    if (s == "table") {
        return Format::Table;
    }
    if (s == "csv") {
        return Format::Csv;
    }
    if (s == "json") {
        return Format::Json;
    }
    throw ConfigError("unknown output format '" + std::string(s) + "' (table, csv, json)");
}

std::string_view to_string(Format f) {
    switch (f) {
        case Format::Table:
            return "table";
        case Format::Csv:
            return "csv";
        case Format::Json:
            return "json";
    }
    return "?";
}

std::string sci(double v, int digits) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", std::max(0, digits - 1), v);
    return buf;
}

std::string to_json(const Report& r) {
    ojson doc;
    doc["command"] = r.command;
    ojson tables = ojson::array();
    for (const Table& t : r.tables) {
        ojson jt;
        jt["title"] = t.title;
        ojson cols = ojson::array();
        for (const Column& c : t.columns) {
            cols.push_back({{"name", c.name}, {"unit", c.unit}});
        }
        jt["columns"] = std::move(cols);
        ojson rows = ojson::array();
        for (const auto& row : t.rows) {
            ojson jr = ojson::array();
            for (const Cell& c : row) {
                jr.push_back(cell_json(c));
            }
            rows.push_back(std::move(jr));
        }
        jt["rows"] = std::move(rows);
        tables.push_back(std::move(jt));
    }
    doc["tables"] = std::move(tables);
    ojson notes = ojson::object();
    for (const auto& [k, v] : r.notes) {
        notes[k] = v;
    }
    doc["notes"] = std::move(notes);
    doc["check_passed"] = r.check_passed ? ojson(*r.check_passed) : ojson(nullptr);
    doc["messages"] = r.messages;
    return doc.dump(2) + "\n";
}

Report from_json(std::string_view text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        throw ConfigError(std::string("report: not valid JSON: ") + e.what());
    }
    try {
        Report r;
        r.command = doc.at("command").get<std::string>();
        for (const ojson& jt : doc.at("tables")) {
            Table t;
            t.title = jt.at("title").get<std::string>();
            for (const ojson& c : jt.at("columns")) {
                t.columns.push_back({c.at("name").get<std::string>(), c.at("unit").get<std::string>()});
            }
            for (const ojson& jr : jt.at("rows")) {
                std::vector<Cell> row;
                for (const ojson& c : jr) {
                    row.push_back(json_cell(c));
                }
                t.add_row(std::move(row));
            }
            r.tables.push_back(std::move(t));
        }
        for (const auto& [k, v] : doc.at("notes").items()) {
            r.notes.emplace_back(k, v.get<std::string>());
        }
        if (!doc.at("check_passed").is_null()) {
            r.check_passed = doc.at("check_passed").get<bool>();
        }
        r.messages = doc.at("messages").get<std::vector<std::string>>();
        return r;
    } catch (const ojson::exception& e) {
        throw ConfigError(std::string("report: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("report: ") + e.what());
    }
}

std::string render(const Report& r, Format f) {
    switch (f) {
        case Format::Table:
            return render_table(r);
        case Format::Csv:
            return render_csv(r);
        case Format::Json:
            return to_json(r);
    }
    return {};
}

}  // namespace vbir::report
