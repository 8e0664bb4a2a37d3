#include <vatom/cli.hpp>
#include <vatom/error.hpp>

#include <cstdio>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace vatom::cli {

std::string format_csv(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i > 0)
            out += ',';
        out += table.header[i];
    }
    out += '\n';
    char buf[40];
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw Error(ErrorKind::InvalidArgument, "format_csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0)
                out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::Config, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw Error(ErrorKind::Config, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error(ErrorKind::Config, "cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

void write_csv(const std::filesystem::path& path, const Table& table)
{
    write_text_atomic(path, format_csv(table));
}

}  // namespace vatom::cli
