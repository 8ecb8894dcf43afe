#include "labelforge/io.hpp"

#include "labelforge/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace labelforge {

namespace fs = std::filesystem;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("error reading '" + path + "'");
    return buf.str();
}

void write_files_atomically(const std::vector<std::pair<std::string, std::string>>& files)
{
    std::vector<std::string> temps;
    auto cleanup = [&] {
        std::error_code ec;
        for (const auto& t : temps)
            fs::remove(t, ec);
    };
    for (const auto& [path, bytes] : files) {
        const std::string temp = path + ".labelforge-tmp";
        temps.push_back(temp);
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            cleanup();
            throw IoError("cannot open '" + path + "' for writing");
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.close();
        if (!out) {
            cleanup();
            throw IoError("error writing '" + path + "'");
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::error_code ec;
        fs::rename(temps[i], files[i].first, ec);
        if (ec) {
            cleanup();
            throw IoError("cannot replace '" + files[i].first + "': " + ec.message());
        }
    }
}

} // namespace labelforge
