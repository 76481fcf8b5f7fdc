#pragma once

#include <string>
#include <vector>

namespace wkg {

enum class ProfileKind { Zero, Bump, DBump };

const char* to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& s);

// bump:  amp (1 - x)^power,   dbump: amp x (1 - x)^power,   x = (r/radius)^2, zero for r >= radius
struct ProfileSpec {
    ProfileKind kind = ProfileKind::Zero;
    double amp = 1.0;
    double radius = 1.0;
    int power = 4;

    bool operator==(const ProfileSpec&) const = default;
};

class RadialProfile {
public:
    RadialProfile() = default;
    RadialProfile(const ProfileSpec& spec, double scale);
    // f(r) = sum_k coeffs[k] * (r/radius)^(2k) on r < radius
    static RadialProfile from_even_poly(const std::vector<double>& coeffs, double radius);

    bool is_zero() const { return even_.empty(); }
    double radius() const { return R_; }

    // m-th r-derivative of f, r >= 0
    double value(double r, int m = 0) const;
    // odd extension phi(x) = x f(|x|)
    double phi(double x, int m = 0) const;
    // I(x) = int_0^x y f(|y|) dy (even)
    double antideriv(double x, int m = 0) const;

private:
    // monomial coefficients in x (powers 0..deg)
    std::vector<double> even_;
    std::vector<double> odd_;
    std::vector<double> anti_;
    double R_ = 1.0;
    void build(const std::vector<double>& even_in_r);
};

double poly_deriv(const std::vector<double>& c, double x, int m);

}  // namespace wkg
