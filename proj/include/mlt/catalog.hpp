#ifndef MLT_CATALOG_HPP_
#define MLT_CATALOG_HPP_

#include <string>
#include <vector>

#include "mlt/function.hpp"
#include "mlt/oracle.hpp"

namespace mlt {

// A named density/transform fixture. Entries without an oracle (oscillatory
// probes) set has_oracle = false and leave the oracle callbacks empty.
struct CatalogEntry {
    std::string name;
    int n = 1;
    int d = 1;
    EnvelopedFunction density;
    TransformOracle oracle;
    bool has_oracle = true;
    bool singular_density = false;
    bool oscillatory = false;
    std::string note;
};

// Registers an entry; with verify set, the density transform is matched
// against the oracle at a few abscissae and the closed-form derivative is
// cross-checked by finite differences. Throws "fixture-inconsistent" for a
// failed check or a duplicate name.
void catalog_register(CatalogEntry entry, bool verify = true);

std::vector<std::string> catalog_list();

// Throws "no-such-entry" for unknown names.
const CatalogEntry& catalog_get(const std::string& name);

// Registers the built-in fixtures (idempotent).
void catalog_register_builtin();

}  // namespace mlt

#endif  // MLT_CATALOG_HPP_
