#include "thetacycle/basis_cache.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unistd.h>

namespace thetacycle {

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    auto dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("atomic_write_file: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("atomic_write_file: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string serialize_basis(const EchelonBasis& basis) {
    std::ostringstream out;
    out << basis.weight << " " << basis.mod.p << " " << basis.mod.m << " "
        << basis.precision << " " << basis.rows.size() << "\n";
    for (const auto& row : basis.rows) {
        for (std::size_t i = 0; i < row.precision(); ++i) {
            if (i) out << " ";
            out << row[i];
        }
        out << "\n";
    }
    return out.str();
}

EchelonBasis deserialize_basis(const std::string& text) {
    std::istringstream in(text);
    long w = 0;
    std::uint64_t p = 0;
    unsigned m = 0;
    std::size_t n = 0, dim = 0;
    if (!(in >> w >> p >> m >> n >> dim))
        throw std::runtime_error("basis cache: malformed header");
    Modulus mod(p, m);
    EchelonBasis basis{w, mod, n, {}};
    basis.rows.reserve(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        std::vector<std::uint64_t> c(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(in >> c[i]))
                throw std::runtime_error("basis cache: truncated row");
            if (c[i] >= mod.pm)
                throw std::runtime_error("basis cache: residue out of range");
        }
        QSeries row(mod, std::move(c));
        row.set_weight_tag(w);
        basis.rows.push_back(std::move(row));
    }
    return basis;
}

struct BasisCache::Impl {
    std::shared_mutex mutex;
    std::filesystem::path dir;
    std::map<std::tuple<long, std::uint64_t, unsigned, std::size_t>,
             std::shared_ptr<const EchelonBasis>> memory;
};

BasisCache::Impl& BasisCache::impl() {
    static Impl s;
    return s;
}

BasisCache& BasisCache::instance() {
    static BasisCache s;
    return s;
}

void BasisCache::set_directory(std::filesystem::path dir) {
    std::unique_lock lock(impl().mutex);
    impl().dir = std::move(dir);
}

std::filesystem::path BasisCache::directory() const {
    std::shared_lock lock(impl().mutex);
    return impl().dir;
}

void BasisCache::clear_memory() {
    std::unique_lock lock(impl().mutex);
    impl().memory.clear();
}

std::shared_ptr<const EchelonBasis> BasisCache::get(long w, const Modulus& mod,
                                                    std::size_t n) {
    auto key = std::make_tuple(w, mod.p, mod.m, n);
    {
        std::shared_lock lock(impl().mutex);
        auto it = impl().memory.find(key);
        if (it != impl().memory.end()) return it->second;
    }
    std::unique_lock lock(impl().mutex);
    auto it = impl().memory.find(key);
    if (it != impl().memory.end()) return it->second;

    std::filesystem::path file;
    if (!impl().dir.empty()) {
        std::ostringstream name;
        name << "basis_w" << w << "_p" << mod.p << "_m" << mod.m << "_N" << n << ".txt";
        file = impl().dir / name.str();
        if (std::filesystem::exists(file)) {
            std::ifstream in(file, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            EchelonBasis basis = deserialize_basis(buf.str());
            if (basis.weight != w || basis.mod != mod || basis.precision != n)
                throw std::runtime_error("basis cache: file key mismatch: " + file.string());
            auto ptr = std::make_shared<const EchelonBasis>(std::move(basis));
            impl().memory[key] = ptr;
            return ptr;
        }
    }
    auto ptr = std::make_shared<const EchelonBasis>(echelon_basis(w, mod, n));
    impl().memory[key] = ptr;
    if (!file.empty()) atomic_write_file(file, serialize_basis(*ptr));
    return ptr;
}

} // namespace thetacycle
