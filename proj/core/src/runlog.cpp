#include "agentmem/runlog.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include "agentmem/errors.hpp"

namespace agentmem::runlog {

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

Writer::Writer(const std::filesystem::path& file, bool append) : path_(file) {
    out_.open(file, append ? std::ios::app : std::ios::trunc);
    if (!out_) throw InputError("cannot open run log for writing: " + file.string());
}

void Writer::write(const std::string& kind, nlohmann::ordered_json payload) {
    nlohmann::ordered_json line;
    line["event"] = kind;
    line.update(payload);
    line["ts"] = utc_now();
    std::lock_guard lock(mutex_);
    out_ << line.dump() << '\n';
    out_.flush();
}

std::vector<Event> read_log(std::istream& in) {
    std::vector<Event> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::ordered_json j;
        try {
            j = nlohmann::ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("run log line " + std::to_string(line_no) + ": " + e.what());
        }
        Event ev;
        ev.kind = j.value("event", std::string{});
        if (ev.kind.empty())
            throw ParseError("run log line " + std::to_string(line_no) + ": missing 'event'");
        ev.payload = std::move(j);
        events.push_back(std::move(ev));
    }
    return events;
}

std::vector<Event> read_log(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open run log: " + file.string());
    return read_log(in);
}

std::string canonical_log(const std::filesystem::path& file) {
    std::ostringstream out;
    for (auto& ev : read_log(file)) {
        ev.payload.erase("ts");
        out << ev.payload.dump() << '\n';
    }
    return out.str();
}

} // namespace agentmem::runlog
