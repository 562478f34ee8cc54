#include "bcdi/csv.hpp"

#include <charconv>

namespace bcdi::csv {
namespace {

std::string flag(bool value) { return value ? "true" : "false"; }

} // namespace

std::string format_number(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

std::string format_number(std::uint64_t value) { return std::to_string(value); }

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

Table& Table::row(std::vector<std::string> cells) {
    require(cells.size() == header_.size(), "CSV row width does not match the header");
    rows_.push_back(std::move(cells));
    return *this;
}

std::string Table::str() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    emit(header_);
    for (const auto& r : rows_) {
        emit(r);
    }
    return out;
}

std::string design_table(const std::vector<DesignCell>& cells) {
    Table table({"pbf", "positions", "M", "f", "below_threshold", "saturated"});
    for (const auto& c : cells) {
        table.row({format_number(c.pbf), format_number(c.positions), format_number(c.constraints), format_number(c.f),
                   flag(c.below_threshold), flag(c.saturated)});
    }
    return table.str();
}

std::string srtf_sweep(const std::vector<SrtfSweepRow>& rows) {
    Table table({"pbf", "positions", "slice_kind", "mu", "sigma", "n_valid", "floor"});
    for (const auto& r : rows) {
        table.row({format_number(static_cast<std::uint64_t>(r.pbf)), format_number(static_cast<std::uint64_t>(r.positions)),
                   to_string(r.slice_kind), format_number(r.mu), format_number(r.sigma),
                   format_number(static_cast<std::uint64_t>(r.n_valid)), format_number(r.floor)});
    }
    return table.str();
}

std::string srtf_slices(const std::vector<SrtfReport>& reports) {
    Table table({"slice", "mu", "sigma", "n_valid", "floor"});
    for (std::size_t s = 0; s < reports.size(); ++s) {
        const auto& r = reports[s];
        table.row({format_number(static_cast<std::uint64_t>(s)), format_number(r.mean), format_number(r.std),
                   format_number(static_cast<std::uint64_t>(r.n_valid)), format_number(r.floor)});
    }
    return table.str();
}

std::string error_history(const std::vector<ErrorRecord>& history) {
    Table table({"iteration", "stage", "error"});
    for (const auto& r : history) {
        table.row({format_number(static_cast<std::uint64_t>(r.iteration)), to_string(r.stage), format_number(r.error)});
    }
    return table.str();
}

} // namespace bcdi::csv
