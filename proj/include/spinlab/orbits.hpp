#pragma once

#include "spinlab/algebra.hpp"
#include "spinlab/linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spinlab {

// Group element carried as its defining matrix together with the induced
// matrices on spinor and vector coordinates.
struct GroupElement {
    Mat a;
    Mat spinor;
    Mat vector;
};

struct InvariantRecord {
    std::vector<std::pair<std::string, double>> values;
    std::string chirality;
    double get(const std::string& name) const;
};

struct SpinOrbitModel {
    std::string name;
    int p = 0;
    int q = 0;
    int spinor_dim = 0;
    Ring spinor_ring = Ring::R;
    int vector_dim = 0;
    bool split_chiral = false;  // spinor space is S+ (+) S-
    bool from_clifford = false;

    // Lie algebra basis in defining matrices and its actions.
    std::vector<Mat> lie_basis;
    std::function<Mat(const Mat&)> spinor_derivative;
    std::function<Mat(const Mat&)> vector_derivative;  // only for Clifford-built models

    std::function<Mat(const Mat&)> spinor_matrix;  // defining matrix -> spinor matrix
    std::function<Mat(const Mat&)> vector_matrix;  // defining matrix -> vector matrix
    std::function<double(const Mat&)> membership_residual;

    std::function<double(const Vec&)> vector_quadratic;
    std::function<std::optional<Vec>(const Vec&)> square;
    std::function<InvariantRecord(const Vec&)> invariants;
    // Invariant symmetric forms on spinors (Clifford-built models).
    Mat spinor_form;
    Mat chirality_projector_plus;

    int group_dim() const { return static_cast<int>(lie_basis.size()); }
    bool has_square() const { return static_cast<bool>(square) && square(Vec::Zero(spinor_dim)).has_value(); }
};

std::vector<std::string> model_names();
SpinOrbitModel make_model(const std::string& name);
// (4,3) and (4,4) models from the spin representation.
SpinOrbitModel clifford_orbit_model(int p, int q, std::uint64_t seed = 7);

GroupElement group_element(const SpinOrbitModel& m, const Vec& coeffs);
GroupElement sample_group(const SpinOrbitModel& m, Rng& rng, double scale = 0.5);
Vec sample_spinor(const SpinOrbitModel& m, Rng& rng);

Vec act_spinor(const SpinOrbitModel& m, const GroupElement& g, const Vec& s);
Vec act_vector(const SpinOrbitModel& m, const GroupElement& g, const Vec& v);
Vec square_spinor(const SpinOrbitModel& m, const Vec& s);
InvariantRecord orbit_invariant(const SpinOrbitModel& m, const Vec& s);
Mat vector_gram(const SpinOrbitModel& m);

// Columns X_k . s over the Lie basis.
Mat linearized_action(const SpinOrbitModel& m, const Vec& s);
int orbit_dimension(const SpinOrbitModel& m, const Vec& s, const RankOptions& opt = {});
int stabilizer_dimension(const SpinOrbitModel& m, const Vec& s, const RankOptions& opt = {});
bool is_pure(const SpinOrbitModel& m, const Vec& s, double tol = 1e-9);
// Pin-type swap (s+, s-) -> (s-, s+) for split chiral models.
Vec swap_chirality(const SpinOrbitModel& m, const Vec& s);

struct OrbitReport {
    Vec spinor;
    InvariantRecord invariants;
    int orbit_dim = 0;
    int stabilizer_dim = 0;
    std::string label;
};

OrbitReport orbit_report(const SpinOrbitModel& m, const Vec& s);

// Helpers shared with other modules.
Mat complex_real_form(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd complex_from_real_form(const Mat& a);

}  // namespace spinlab
