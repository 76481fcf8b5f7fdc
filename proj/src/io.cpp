#include "wkg/io.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace wkg::io {

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v, int line)
{
    double x = 0.0;
    const char* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end || !std::isfinite(x))
        throw ScenarioError(key, "expected a number, got '" + v + "'", line);
    return x;
}

int parse_int(const std::string& key, const std::string& v, int line)
{
    int x = 0;
    const char* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end)
        throw ScenarioError(key, "expected an integer, got '" + v + "'", line);
    return x;
}

using Setter = std::function<void(Scenario&, const std::string& key, const std::string& v, int line)>;

std::map<std::string, Setter> setters()
{
    std::map<std::string, Setter> m;
    auto dbl = [&m](const std::string& k, auto member) {
        m[k] = [member](Scenario& sc, const std::string& key, const std::string& v, int line) {
            member(sc) = parse_double(key, v, line);
        };
    };
    dbl("couplings.b00", [](Scenario& s) -> double& { return s.couplings.b00; });
    dbl("couplings.bd", [](Scenario& s) -> double& { return s.couplings.bd; });
    dbl("couplings.p00", [](Scenario& s) -> double& { return s.couplings.p00; });
    dbl("couplings.pd", [](Scenario& s) -> double& { return s.couplings.pd; });
    dbl("mass.c", [](Scenario& s) -> double& { return s.c; });
    dbl("data.eps", [](Scenario& s) -> double& { return s.eps; });
    dbl("grid.dr", [](Scenario& s) -> double& { return s.grid.dr; });
    dbl("grid.r_max", [](Scenario& s) -> double& { return s.grid.r_max; });
    dbl("grid.t_end", [](Scenario& s) -> double& { return s.grid.t_end; });
    dbl("grid.cfl", [](Scenario& s) -> double& { return s.grid.cfl; });
    m["grid.store_every"] = [](Scenario& sc, const std::string& key, const std::string& v, int line) {
        sc.grid.store_every = parse_int(key, v, line);
    };
    dbl("monitors.delta", [](Scenario& s) -> double& { return s.monitors.delta; });
    dbl("monitors.eta", [](Scenario& s) -> double& { return s.monitors.eta; });
    dbl("monitors.c1eps_factor", [](Scenario& s) -> double& { return s.monitors.c1eps_factor; });
    dbl("monitors.s_fit_min", [](Scenario& s) -> double& { return s.monitors.s_fit_min; });
    dbl("monitors.ds", [](Scenario& s) -> double& { return s.monitors.ds; });
    for (const char* name : {"u0", "u1", "v0", "v1"}) {
        const std::string n = name;
        auto prof = [n](Scenario& s) -> ProfileSpec& {
            return n == "u0" ? s.u0 : n == "u1" ? s.u1 : n == "v0" ? s.v0 : s.v1;
        };
        m["data." + n + ".kind"] = [prof](Scenario& sc, const std::string& key, const std::string& v, int line) {
            try {
                prof(sc).kind = profile_kind_from_string(v);
            } catch (const std::exception&) {
                throw ScenarioError(key, "unknown profile kind '" + v + "' (zero, bump, dbump)", line);
            }
        };
        dbl("data." + n + ".amp", [prof](Scenario& s) -> double& { return prof(s).amp; });
        dbl("data." + n + ".radius", [prof](Scenario& s) -> double& { return prof(s).radius; });
        m["data." + n + ".power"] = [prof](Scenario& sc, const std::string& key, const std::string& v, int line) {
            prof(sc).power = parse_int(key, v, line);
        };
    }
    return m;
}

}  // namespace

std::string fmt(double x)
{
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, p);
}

Scenario parse_scenario(const std::string& text)
{
    static const auto table = setters();
    Scenario sc = reference_scenario();
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string ln = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (ln.empty())
            continue;
        const auto eq = ln.find('=');
        if (eq == std::string::npos)
            throw ScenarioError(ln, "expected 'key = value'", line);
        const std::string key = trim(ln.substr(0, eq));
        const std::string val = trim(ln.substr(eq + 1));
        const auto it = table.find(key);
        if (it == table.end())
            throw ScenarioError(key, "unknown key", line);
        if (seen.count(key))
            throw ScenarioError(key, "duplicate key (first on line " + std::to_string(seen[key]) + ")", line);
        if (val.empty())
            throw ScenarioError(key, "missing value", line);
        it->second(sc, key, val, line);
        seen[key] = line;
    }
    if (!seen.count("data.eps"))
        throw ScenarioError("data.eps", "missing required key", 0);
    try {
        sc.validate();
    } catch (const ScenarioError& e) {
        // re-anchor at the line that set the key, if any
        std::string key = e.key();
        auto it = seen.find(key);
        if (it == seen.end()) {
            // profile errors are reported per profile; find any key of that profile
            for (const auto& [k, l] : seen)
                if (k.rfind(key + ".", 0) == 0) {
                    it = seen.find(k);
                    break;
                }
        }
        const std::string msg = e.what();
        const auto colon = msg.find(key + ": ");
        throw ScenarioError(key, colon == std::string::npos ? msg : msg.substr(colon + key.size() + 2),
                            it == seen.end() ? 0 : it->second);
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read scenario " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string serialize(const Scenario& sc)
{
    std::ostringstream o;
    o << "couplings.b00 = " << fmt(sc.couplings.b00) << "\n"
      << "couplings.bd = " << fmt(sc.couplings.bd) << "\n"
      << "couplings.p00 = " << fmt(sc.couplings.p00) << "\n"
      << "couplings.pd = " << fmt(sc.couplings.pd) << "\n"
      << "mass.c = " << fmt(sc.c) << "\n"
      << "data.eps = " << fmt(sc.eps) << "\n";
    const std::pair<const char*, const ProfileSpec*> ps[] = {{"u0", &sc.u0}, {"u1", &sc.u1}, {"v0", &sc.v0}, {"v1", &sc.v1}};
    for (const auto& [n, p] : ps) {
        const std::string b = std::string("data.") + n;
        o << b << ".kind = " << to_string(p->kind) << "\n"
          << b << ".amp = " << fmt(p->amp) << "\n"
          << b << ".radius = " << fmt(p->radius) << "\n"
          << b << ".power = " << p->power << "\n";
    }
    o << "grid.dr = " << fmt(sc.grid.dr) << "\n"
      << "grid.r_max = " << fmt(sc.grid.r_max) << "\n"
      << "grid.t_end = " << fmt(sc.grid.t_end) << "\n"
      << "grid.cfl = " << fmt(sc.grid.cfl) << "\n"
      << "grid.store_every = " << sc.grid.store_every << "\n"
      << "monitors.delta = " << fmt(sc.monitors.delta) << "\n"
      << "monitors.eta = " << fmt(sc.monitors.eta) << "\n"
      << "monitors.c1eps_factor = " << fmt(sc.monitors.c1eps_factor) << "\n"
      << "monitors.s_fit_min = " << fmt(sc.monitors.s_fit_min) << "\n"
      << "monitors.ds = " << fmt(sc.monitors.ds) << "\n";
    return o.str();
}

namespace {

std::string to_hex(const unsigned char* d, unsigned n)
{
    static const char* hx = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < n; ++i) {
        s += hx[d[i] >> 4];
        s += hx[d[i] & 15];
    }
    return s;
}

std::array<unsigned char, 32> sha256_raw(const void* data, std::size_t n)
{
    std::array<unsigned char, 32> out{};
    unsigned len = 0;
    if (EVP_Digest(data, n, out.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32)
        throw std::runtime_error("sha256 failed");
    return out;
}

template <class T>
void put(std::string& b, const T& x)
{
    b.append(reinterpret_cast<const char*>(&x), sizeof(T));
}

class Reader {
public:
    Reader(const std::string& b, std::size_t end) : b_(b), end_(end) {}
    template <class T>
    T get()
    {
        T x;
        need(sizeof(T));
        std::memcpy(&x, b_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return x;
    }
    void read(void* dst, std::size_t n)
    {
        need(n);
        std::memcpy(dst, b_.data() + pos_, n);
        pos_ += n;
    }
    std::size_t pos() const { return pos_; }

private:
    void need(std::size_t n) const
    {
        if (pos_ + n > end_)
            throw SliceFormatError("slice file truncated");
    }
    const std::string& b_;
    std::size_t end_;
    std::size_t pos_ = 0;
};

constexpr char kMagic[8] = {'W', 'K', 'G', 'S', 'L', 'I', 'C', 'E'};
constexpr std::uint32_t kEndian = 0x01020304u;

}  // namespace

std::string sha256_hex(const std::string& bytes)
{
    const auto d = sha256_raw(bytes.data(), bytes.size());
    return to_hex(d.data(), 32);
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

void slice_dump(const SliceHistory& h, const std::filesystem::path& path)
{
    std::string b;
    b.reserve(h.bytes() + 4096);
    b.append(kMagic, 8);
    put(b, kSliceVersion);
    put(b, kEndian);
    const std::string text = serialize(h.scenario);
    put(b, static_cast<std::uint64_t>(text.size()));
    b += text;
    put(b, h.h);
    put(b, h.t0);
    put(b, h.dt);
    put(b, h.max_abs_p00u);
    put(b, static_cast<std::int32_t>(h.n_nodes));
    put(b, static_cast<std::int64_t>(h.size()));
    for (int k = 0; k < h.size(); ++k) {
        const int len = h.length(k);
        put(b, static_cast<std::int32_t>(len));
        put(b, h.time(k));
        for (Field f : {Field::U, Field::UT, Field::V, Field::VT})
            b.append(reinterpret_cast<const char*>(h.field(k, f)), sizeof(double) * len);
    }
    const auto d = sha256_raw(b.data(), b.size());
    b.append(reinterpret_cast<const char*>(d.data()), d.size());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out.write(b.data(), static_cast<std::streamsize>(b.size()));
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

SliceHistory slice_load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string b = ss.str();
    if (b.size() < 8 + 8 + 32)
        throw SliceFormatError("slice file truncated");
    if (std::memcmp(b.data(), kMagic, 8) != 0)
        throw SliceFormatError("not a slice file (bad magic)");
    Reader hdr(b, b.size());
    hdr.get<std::uint64_t>();
    const auto version = hdr.get<std::uint32_t>();
    const auto endian = hdr.get<std::uint32_t>();
    if (endian != kEndian)
        throw SliceFormatError("endianness mismatch");
    if (version != kSliceVersion)
        throw SliceFormatError("unsupported slice version " + std::to_string(version));
    const std::size_t body = b.size() - 32;
    const auto d = sha256_raw(b.data(), body);
    if (std::memcmp(d.data(), b.data() + body, 32) != 0)
        throw SliceFormatError("checksum mismatch");

    Reader r(b, body);
    r.get<std::uint64_t>();
    r.get<std::uint64_t>();
    const auto tlen = r.get<std::uint64_t>();
    if (tlen > body)
        throw SliceFormatError("slice file truncated");
    std::string text(tlen, '\0');
    r.read(text.data(), tlen);
    SliceHistory h;
    h.scenario = parse_scenario(text);
    h.h = r.get<double>();
    h.t0 = r.get<double>();
    h.dt = r.get<double>();
    h.max_abs_p00u = r.get<double>();
    h.n_nodes = r.get<std::int32_t>();
    const auto n = r.get<std::int64_t>();
    if (n < 0 || h.n_nodes < 0)
        throw SliceFormatError("corrupt header");
    h.reserve(static_cast<std::size_t>(n), (body - r.pos()) / sizeof(double) * 3 / 2);
    std::vector<double> u, ut, utt, v, vt, vtt;
    for (std::int64_t k = 0; k < n; ++k) {
        const int len = r.get<std::int32_t>();
        const double t = r.get<double>();
        if (len < 0 || len > h.n_nodes + 1)
            throw SliceFormatError("corrupt slice length");
        if (t != h.time(static_cast<int>(k)))
            throw SliceFormatError("slice time does not match the grid");
        for (auto* a : {&u, &ut, &v, &vt}) {
            a->resize(len);
            r.read(a->data(), sizeof(double) * len);
        }
        utt.resize(len);
        vtt.resize(len);
        accelerations(h.scenario, len, u.data(), ut.data(), v.data(), vt.data(), utt.data(), vtt.data());
        h.push(len, u.data(), ut.data(), utt.data(), v.data(), vt.data(), vtt.data());
    }
    if (r.pos() != body)
        throw SliceFormatError("trailing bytes in slice file");
    return h;
}

SliceHistory synthesize_history(const FieldSampler& f, const Scenario& sc, double dt, double t_end)
{
    SliceHistory h;
    h.scenario = sc;
    h.h = sc.grid.dr;
    h.t0 = 2.0;
    h.dt = dt;
    h.n_nodes = grid_nodes(sc);
    const int n = static_cast<int>(std::lround((t_end - h.t0) / dt));
    const int m = h.n_nodes + 1;
    std::vector<double> u(m), ut(m), utt(m), v(m), vt(m), vtt(m);
    h.reserve(n + 1, static_cast<std::size_t>(n + 1) * m * 6);
    for (int k = 0; k <= n; ++k) {
        const double t = h.time(k);
        for (int j = 0; j < m; ++j) {
            const RadialJet J = f.jet(t, j * h.h, 1);
            u[j] = J.u[0][0];
            ut[j] = J.u[1][0];
            v[j] = J.v[0][0];
            vt[j] = J.v[1][0];
        }
        accelerations(sc, m, u.data(), ut.data(), v.data(), vt.data(), utt.data(), vtt.data());
        h.push(m, u.data(), ut.data(), utt.data(), v.data(), vt.data(), vtt.data());
    }
    return h;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), cols_(header.size())
{
    row(header);
}

CsvWriter::~CsvWriter()
{
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    out << buf_;
}

void CsvWriter::row(const std::vector<double>& values)
{
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double x : values)
        cells.push_back(fmt(x));
    row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    if (cells.size() != cols_)
        throw std::invalid_argument("csv row width mismatch for " + path_.string());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
}

void write_series(const std::filesystem::path& path, const std::string& xlabel, const std::string& ylabel,
                  const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("write_series: length mismatch");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "# " << xlabel << " " << ylabel << "\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        out << fmt(x[i]) << " " << fmt(y[i]) << "\n";
}

void RunManifest::write(const std::filesystem::path& path) const
{
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    j["version"] = version;
    j["scenario"] = scenario_text;
    j["seed"] = seed;
    j["threads"] = threads;
    j["wall_seconds"] = wall_seconds;
    j["outputs"] = nlohmann::json::array();
    for (const auto& e : outputs)
        j["outputs"].push_back({{"path", e.path}, {"sha256", e.sha256}});
    std::ofstream out(path, std::ios::trunc);
    out << j.dump(2) << "\n";
}

}  // namespace wkg::io
