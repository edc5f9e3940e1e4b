#pragma once

#include "modgl2/asymptotics.hpp"
#include "modgl2/breuil_mezard.hpp"
#include "modgl2/grothendieck_ring.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace modgl2 {

using Json = nlohmann::json;

// {"p":3,"f":2,"basis":"L","terms":[{"n":7,"m":1,"coeff":"3/80"}]}
Json to_json(const RingElement& v);
// Strict reader: valid labels, no duplicate labels, no zero coefficients.
RingElement ring_element_from_json(const Json& j);

Json to_json(const ConstantsReport& report);
ConstantsReport constants_report_from_json(const Json& j);

// [{"n":1,"m":0,"mu":1}, ...]
Json to_json(const IntrinsicMultiplicities& weights);
IntrinsicMultiplicities intrinsics_from_json(const FieldParams& params, const Json& j);

// {"dim":5,"label":"trivial","class":{...RingElement...}}
Json to_json(const GaloisTypeClass& type);
GaloisTypeClass galois_type_from_json(const GrothendieckRing& ring, const Json& j);

Json to_json(const BoundReport& report);

Json read_json_file(const std::string& path);

// On-disk cache: structure constants and constants reports per (p, f, h).
// Each entry carries a checksum. A file or entry that fails to parse or
// validate is discarded, never trusted.
class DiskCache {
public:
    explicit DiskCache(std::string path);

    const std::string& path() const { return path_; }
    // Empty when the file was missing; set to a message when it was discarded.
    const std::string& warning() const { return warning_; }

    // Installs cached structure constants into the ring; warns on rejection.
    void load_into(GrothendieckRing& ring);
    void store_from(const GrothendieckRing& ring);

    // Sets the warning and drops the entry when it fails validation.
    std::optional<ConstantsReport> constants(const FieldParams& params);
    void store_constants(const ConstantsReport& report);

    void save() const;

private:
    static std::string ring_key(const FieldParams& params);

    std::string path_;
    std::string warning_;
    Json data_;
};

} // namespace modgl2
