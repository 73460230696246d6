#ifndef RIGVER_CATALOG_HPP
#define RIGVER_CATALOG_HPP

#include "rigver/chains.hpp"
#include "rigver/lpsolve.hpp"
#include "rigver/optimize.hpp"
#include "rigver/sysmodel.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rigver {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Expected outcomes live in the data catalog, not in code, so the shipped
/// suite doubles as a regression ledger.
struct CatalogSystem {
    std::string name, file, claim;
    Int scan_lo = 4, scan_hi = 40;
    std::optional<Int> infeasible_from;  // expected minimal infeasible M
    std::string limit_status = "infeasible";
    bool tail_certified = true;
};

struct CatalogChain {
    std::string name, file, claim;
    std::map<Int, std::string> values;  // M -> exact value
    std::string closed;                 // expected closed form (optional)
    std::optional<Int> threshold_ge;
};

struct CatalogMinimization {
    std::string name, objective, region, claim;
    std::string value;
    std::string argmin_nu, argmin_theta;
};

struct CatalogGraph {
    std::string name, file, claim;
};

struct CatalogCheck {
    std::string name, claim;
};

struct Catalog {
    std::string data_dir;
    std::vector<CatalogSystem> systems;
    std::vector<CatalogChain> chains;
    std::vector<CatalogMinimization> minimizations;
    std::vector<CatalogCheck> identities;  // phi cases
    std::vector<CatalogCheck> pipelines;
    std::vector<CatalogGraph> graphs;

    const CatalogSystem* find_system(const std::string& name) const;
    const CatalogChain* find_chain(const std::string& name) const;
};

/// Resolves the data directory: explicit argument, then the environment
/// variable RIGVER_DATA_DIR, then the build-time default.
std::string resolve_data_dir(const std::string& override_dir = "");

Catalog load_catalog(const std::string& data_dir);

ParametricSystem load_system(const Catalog& cat, const std::string& name);
ChainSpec load_chain(const Catalog& cat, const std::string& name);

struct CheckRecord {
    std::string id;
    std::string claim;
    std::string expected, actual;
    bool pass = false;
    std::string certificate_path;  // when one was written
};

struct RunReport {
    std::string version = kToolkitVersion;
    std::vector<CheckRecord> records;
    bool pass = true;

    std::string to_text() const;
    /// Deterministic JSON; the single "generated_at" field varies per run.
    std::string to_json(const std::string& timestamp) const;
};

/// Runs the whole shipped suite: systems (scan + limit + tail), chains,
/// minimizations, identities, pipelines and the graph corpus. Certificates
/// are written to cert_dir when non-empty.
RunReport run_verify_all(const Catalog& cat, const std::string& cert_dir = "");

}  // namespace rigver

#endif
