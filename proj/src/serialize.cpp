#include "odg/serialize.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

namespace odg {

namespace {

using json = nlohmann::json;

constexpr char kGridMagic[8] = {'O', 'D', 'G', 'G', 'R', 'I', 'D', '1'};

void put_u16(std::string& buf, std::uint16_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_f32(std::string& buf, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

float get_f32(const unsigned char* p) {
    std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                         (static_cast<std::uint32_t>(p[2]) << 16) |
                         (static_cast<std::uint32_t>(p[3]) << 24);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

std::string read_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_binary(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write file: " + path);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw DataError("short write: " + path);
}

} // namespace

void save_grid(const VoxelGrid& grid, const std::string& path) {
    grid.validate();
    std::string buf;
    buf.reserve(32 + grid.labels.size());
    buf.append(kGridMagic, 8);
    put_u16(buf, static_cast<std::uint16_t>(grid.H));
    put_u16(buf, static_cast<std::uint16_t>(grid.W));
    put_u16(buf, static_cast<std::uint16_t>(grid.Z));
    put_u16(buf, grid.free_label);
    put_f32(buf, static_cast<float>(grid.voxel_size));
    for (int i = 0; i < 3; ++i) put_f32(buf, static_cast<float>(grid.origin[i]));
    buf.append(reinterpret_cast<const char*>(grid.labels.data()), grid.labels.size());
    write_binary(path, buf);
}

VoxelGrid load_grid(const std::string& path) {
    const std::string buf = read_binary(path);
    if (buf.size() < 32 || std::memcmp(buf.data(), kGridMagic, 8) != 0)
        throw DataError("not an ODGGRID1 file: " + path);
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data()) + 8;
    VoxelGrid g;
    g.H = get_u16(p + 0);
    g.W = get_u16(p + 2);
    g.Z = get_u16(p + 4);
    g.free_label = get_u16(p + 6);
    g.voxel_size = get_f32(p + 8);
    g.origin = Vec3(get_f32(p + 12), get_f32(p + 16), get_f32(p + 20));
    const std::size_t n = static_cast<std::size_t>(g.H) * g.W * g.Z;
    if (buf.size() != 32 + n) throw DataError("truncated voxel grid: " + path);
    g.labels.assign(buf.begin() + 32, buf.end());
    g.validate();
    return g;
}

void save_params(const ParamStore& store, const std::string& path_stem) {
    json manifest = json::array();
    std::string blob;
    blob.reserve(static_cast<std::size_t>(store.total_size()) * 4);
    std::int64_t offset = 0;
    for (const auto& [name, t] : store.items()) {
        manifest.push_back({{"name", name}, {"shape", t.shape}, {"offset", offset}});
        for (double x : t.v) put_f32(blob, static_cast<float>(x));
        offset += t.size();
    }
    write_text_file(path_stem + ".json", manifest.dump(2) + "\n");
    write_binary(path_stem + ".bin", blob);
}

ParamStore load_params(const std::string& path_stem) {
    json manifest;
    try {
        manifest = json::parse(read_text_file(path_stem + ".json"));
    } catch (const json::exception& e) {
        throw DataError("bad weights manifest " + path_stem + ".json: " + e.what());
    }
    const std::string blob = read_binary(path_stem + ".bin");
    ParamStore store;
    for (const auto& entry : manifest) {
        const std::string name = entry.at("name").get<std::string>();
        const std::vector<int> shape = entry.at("shape").get<std::vector<int>>();
        const std::int64_t offset = entry.at("offset").get<std::int64_t>();
        Tensor& t = store.add(name, shape);
        if (static_cast<std::size_t>((offset + t.size()) * 4) > blob.size())
            throw DataError("weights blob too short for tensor " + name);
        const auto* p = reinterpret_cast<const unsigned char*>(blob.data()) + offset * 4;
        for (std::int64_t i = 0; i < t.size(); ++i) t.v[static_cast<std::size_t>(i)] = get_f32(p + i * 4);
    }
    return store;
}

void save_depth_pgm(const std::vector<double>& depth_m, int width, int height,
                    const std::string& path) {
    if (depth_m.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("depth buffer size mismatch");
    std::string buf = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
    for (double d : depth_m) {
        const double mm = std::clamp(d * 1000.0, 0.0, 65535.0);
        const auto v = static_cast<std::uint16_t>(std::lround(mm));
        buf.push_back(static_cast<char>((v >> 8) & 0xff)); // MSB first per Netpbm
        buf.push_back(static_cast<char>(v & 0xff));
    }
    write_binary(path, buf);
}

std::vector<double> load_depth_pgm(const std::string& path, int& width, int& height) {
    const std::string buf = read_binary(path);
    std::istringstream ss(buf);
    std::string magic;
    int maxval = 0;
    ss >> magic >> width >> height >> maxval;
    if (magic != "P5" || maxval != 65535) throw DataError("unsupported PGM: " + path);
    ss.get(); // single whitespace after header
    const std::size_t n = static_cast<std::size_t>(width) * height;
    const std::size_t start = static_cast<std::size_t>(ss.tellg());
    if (buf.size() < start + 2 * n) throw DataError("truncated PGM: " + path);
    std::vector<double> out(n);
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data()) + start;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<double>((p[2 * i] << 8) | p[2 * i + 1]) / 1000.0;
    return out;
}

void save_class_ppm(const std::vector<int>& class_ids, int width, int height, int num_classes,
                    const std::string& path) {
    if (class_ids.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("class buffer size mismatch");
    // Fixed palette: hue wheel over the class count, background black.
    auto palette = [&](int c) -> std::array<unsigned char, 3> {
        if (c < 0 || c >= num_classes) return {0, 0, 0};
        const double h = 6.0 * c / std::max(1, num_classes);
        const int i = static_cast<int>(h);
        const double f = h - i;
        const double q = 1.0 - f;
        double r = 0, g = 0, b = 0;
        switch (i % 6) {
            case 0: r = 1; g = f; break;
            case 1: r = q; g = 1; break;
            case 2: g = 1; b = f; break;
            case 3: g = q; b = 1; break;
            case 4: r = f; b = 1; break;
            default: r = 1; b = q; break;
        }
        return {static_cast<unsigned char>(64 + 191 * r), static_cast<unsigned char>(64 + 191 * g),
                static_cast<unsigned char>(64 + 191 * b)};
    };
    std::string buf = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    for (int c : class_ids) {
        const auto rgb = palette(c);
        buf.push_back(static_cast<char>(rgb[0]));
        buf.push_back(static_cast<char>(rgb[1]));
        buf.push_back(static_cast<char>(rgb[2]));
    }
    write_binary(path, buf);
}

void save_f32_blob(const std::vector<double>& data, const std::string& path) {
    std::string buf;
    buf.reserve(data.size() * 4);
    for (double x : data) put_f32(buf, static_cast<float>(x));
    write_binary(path, buf);
}

std::vector<double> load_f32_blob(const std::string& path, std::size_t expected_count) {
    const std::string buf = read_binary(path);
    if (buf.size() != expected_count * 4)
        throw DataError("blob " + path + " has unexpected size " + std::to_string(buf.size()));
    std::vector<double> out(expected_count);
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
    for (std::size_t i = 0; i < expected_count; ++i) out[i] = get_f32(p + 4 * i);
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw DataError("cannot write file: " + path);
    f << content;
    if (!f) throw DataError("short write: " + path);
}

} // namespace odg
