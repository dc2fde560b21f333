#include "hmfa/csv.hpp"
#include "hmfa/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hmfa {

std::string format_number(double v)
{
    if (v == 0.0)
        return "0"; // also folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != header_.size())
        throw std::invalid_argument("CsvTable: row width does not match the header");
    rows_.push_back(std::move(cells));
}

namespace {

void append_comment(std::string& out, const std::string& comment)
{
    if (comment.empty())
        return;
    std::istringstream lines(comment);
    std::string line;
    while (std::getline(lines, line))
        out += "# " + line + "\n";
}

void append_row(std::string& out, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out += ',';
        out += cells[i];
    }
    out += '\n';
}

} // namespace

std::string CsvTable::str(const std::string& comment) const
{
    std::string out;
    append_comment(out, comment);
    append_row(out, header_);
    for (const auto& r : rows_)
        append_row(out, r);
    return out;
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> make_grid(double horizon, double dt)
{
    if (!(horizon > 0.0) || !(dt > 0.0) || !std::isfinite(horizon) || !std::isfinite(dt))
        throw std::invalid_argument("grid needs a positive finite horizon and step");
    const auto steps = static_cast<std::size_t>(std::floor(horizon / dt * (1.0 + 1e-9)));
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k)
        grid[k] = static_cast<double>(k) * dt;
    return grid;
}

std::string trajectory_csv(const Trajectory& t, const std::string& comment)
{
    const std::size_t k = t.num_states();
    std::vector<std::string> header{"t"};
    for (const auto& s : t.states)
        header.push_back("xbar_" + s);
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t r = s; r < k; ++r)
            header.push_back("nu_" + t.states[s] + "_" + t.states[r]);
    header.push_back("events");
    CsvTable table(header);
    for (std::size_t row = 0; row < t.rows(); ++row) {
        std::vector<std::string> cells{format_number(t.times[row])};
        for (std::size_t s = 0; s < k; ++s)
            cells.push_back(format_number(t.xbar_at(row, s)));
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t r = s; r < k; ++r)
                cells.push_back(t.nu.empty() ? "" : format_number(t.nu_at(row, s, r)));
        cells.push_back(t.events.empty() ? "" : format_number(t.events[row]));
        table.add_row(std::move(cells));
    }
    return table.str(comment);
}

Trajectory parse_trajectory_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> header;
    Trajectory t;
    auto split = [](const std::string& l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(l);
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (!l.empty() && l.back() == ',')
            cells.emplace_back();
        return cells;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (header.empty()) {
            header = split(line);
            for (const auto& h : header)
                if (h.rfind("xbar_", 0) == 0)
                    t.states.push_back(h.substr(5));
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw std::invalid_argument("trajectory CSV: ragged row");
        const std::size_t k = t.states.size();
        t.times.push_back(std::stod(cells[0]));
        for (std::size_t s = 0; s < k; ++s)
            t.xbar.push_back(std::stod(cells[1 + s]));
        std::vector<double> nu(k * k, 0.0);
        std::size_t c = 1 + k;
        bool has_nu = true;
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t r = s; r < k; ++r, ++c) {
                if (cells[c].empty()) {
                    has_nu = false;
                    continue;
                }
                nu[s * k + r] = nu[r * k + s] = std::stod(cells[c]);
            }
        if (has_nu)
            t.nu.insert(t.nu.end(), nu.begin(), nu.end());
        if (!cells[c].empty())
            t.events.push_back(std::stod(cells[c]));
    }
    return t;
}

} // namespace hmfa
