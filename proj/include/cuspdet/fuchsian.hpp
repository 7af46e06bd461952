#pragma once

#include <string>
#include <vector>

namespace cuspdet::fuchsian {

struct Mobius {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Mobius inverse() const { return {d, -b, -c, a}; }
    double frobenius() const;
    void validate() const;  // |det - 1| <= 1e-12
};

Mobius operator*(const Mobius& x, const Mobius& y);

struct SurfaceData {
    int genus = 0;
    int cusps = 1;
    int components = 1;

    int euler_characteristic() const { return 2 - 2 * genus - cusps; }
    // Gauss-Bonnet, summed over components
    double area() const;
    void validate() const;
};

struct GroupPresentation {
    std::vector<Mobius> generators;
    std::string name;
    SurfaceData surface;  // the quotient surface, for the built-ins

    void validate() const;
};

struct LengthEntry {
    double length = 0;
    int mult = 1;
    bool pinched = false;

    bool operator==(const LengthEntry&) const = default;
};

struct LengthSpectrum {
    std::vector<LengthEntry> entries;
    double cutoff = 0;
    SurfaceData surface;
    // word length explored, and whether some branch was cut by it rather than
    // by the length bound (then the spectrum may be incomplete below cutoff)
    int word_radius = 0;
    bool radius_limited = false;

    // Checks the documented invariants. Pinched families may carry equal lengths.
    void validate() const;
    long total_multiplicity() const;
};

// 2 arccosh(|trace|/2); throws not_hyperbolic for |trace| <= 2.
double geodesic_length(double trace);

// "thrice-punctured-sphere" or "once-punctured-torus(tr)" with tr >= 2 sqrt 2.
GroupPresentation builtin_group(const std::string& name);

struct EnumerationOptions {
    // prefixes with Frobenius norm above prune_factor * (2 cosh(L/2) + 2)
    // are not extended
    double prune_factor = 16.0;
    long max_nodes = 400'000'000;
    int threads = 1;
    double merge_tol = 1e-9;
};

// Primitive hyperbolic conjugacy classes of length <= max_length among
// cyclically reduced words of length <= max_word_length. A class and its
// inverse are counted separately. The generators must generate a free group.
LengthSpectrum enumerate_length_spectrum(const GroupPresentation& group, double max_length,
                                         int max_word_length, const EnumerationOptions& opt = {});

// Replaces the selected entries' lengths by ell and flags them pinched.
LengthSpectrum pinch_family(const LengthSpectrum& base, const std::vector<int>& pinch_indices, double ell);

}  // namespace cuspdet::fuchsian
