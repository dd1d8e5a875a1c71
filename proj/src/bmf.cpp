#include "bml/bmf.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

namespace bml {

namespace {

constexpr char kMagic[8] = {'B', 'M', 'F', 'L', 'D', '1', '\0', '\0'};

static_assert(sizeof(double) == 8);

}  // namespace

void write_bmf(const std::string& path, const PhysicalField& field) {
    nlohmann::ordered_json header;
    header["n"] = field.grid.n;
    header["N"] = field.grid.N;
    header["L"] = field.grid.L;
    header["components"] = field.components;
    header["layout"] = "row-major";
    const std::string hs = header.dump();
    if (hs.size() > 0xffffffffull) throw IoError("write_bmf: header too large");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("write_bmf: cannot open " + path);
    out.write(kMagic, 8);
    const std::uint32_t len = std::uint32_t(hs.size());
    unsigned char lenb[4] = {
        (unsigned char)(len & 0xff), (unsigned char)((len >> 8) & 0xff),
        (unsigned char)((len >> 16) & 0xff), (unsigned char)((len >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(lenb), 4);
    out.write(hs.data(), std::streamsize(hs.size()));
    // samples are IEEE doubles; the build targets little-endian hosts
    out.write(reinterpret_cast<const char*>(field.values.data()),
              std::streamsize(field.values.size() * sizeof(double)));
    if (!out) throw IoError("write_bmf: short write to " + path);
}

PhysicalField read_bmf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_bmf: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw IoError("read_bmf: bad magic in " + path);
    unsigned char lenb[4];
    in.read(reinterpret_cast<char*>(lenb), 4);
    if (!in) throw IoError("read_bmf: truncated header length");
    const std::uint32_t len = std::uint32_t(lenb[0]) | (std::uint32_t(lenb[1]) << 8) |
                              (std::uint32_t(lenb[2]) << 16) |
                              (std::uint32_t(lenb[3]) << 24);
    std::string hs(len, '\0');
    in.read(hs.data(), std::streamsize(len));
    if (!in) throw IoError("read_bmf: truncated header");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(hs);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("read_bmf: invalid header json: ") + e.what());
    }
    for (const char* key : {"n", "N", "L", "components", "layout"})
        if (!header.contains(key))
            throw IoError(std::string("read_bmf: header missing ") + key);
    if (header["layout"] != "row-major")
        throw IoError("read_bmf: unsupported layout");
    GridSpec grid(header["n"].get<int>(), header["N"].get<int>(),
                  header["L"].get<double>());
    const int comps = header["components"].get<int>();
    if (comps < 1) throw IoError("read_bmf: bad component count");
    PhysicalField field(grid, comps);
    in.read(reinterpret_cast<char*>(field.values.data()),
            std::streamsize(field.values.size() * sizeof(double)));
    if (!in) throw IoError("read_bmf: truncated samples in " + path);
    char extra;
    if (in.read(&extra, 1)) throw IoError("read_bmf: trailing bytes in " + path);
    return field;
}

}  // namespace bml
