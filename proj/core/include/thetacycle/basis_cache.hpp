#pragma once

#include "thetacycle/forms.hpp"

#include <filesystem>
#include <memory>

namespace thetacycle {

// Process-wide cache of echelon bases keyed by (weight, p, m, N), with an
// optional disk layer.  Reads are concurrent; builds and writes are
// serialized.  Disk files: header "w p m N dim", then dim rows of N decimal
// residues, newline-separated.
class BasisCache {
public:
    static BasisCache& instance();

    // Directory for persisted bases; empty disables the disk layer.
    void set_directory(std::filesystem::path dir);
    std::filesystem::path directory() const;

    std::shared_ptr<const EchelonBasis> get(long w, const Modulus& mod, std::size_t n);

    void clear_memory();

private:
    BasisCache() = default;
    struct Impl;
    static Impl& impl();
};

// Serialization used by the disk layer, exposed for tests.
std::string serialize_basis(const EchelonBasis& basis);
EchelonBasis deserialize_basis(const std::string& text);

// Writes via a temporary file in the same directory, then renames.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

} // namespace thetacycle
