#include "galcoh/gmodules.hpp"

#include <queue>

#include "galcoh/errors.hpp"

namespace galcoh {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
    for (auto d : factors_) {
        if (d < 1) throw InputError("invariant factor must be positive");
        if (card_ > (std::size_t{1} << 40) / static_cast<std::size_t>(d)) {
            throw ResourceError("finite abelian group too large to enumerate");
        }
        card_ *= static_cast<std::size_t>(d);
    }
}

ModElem FiniteAbelianGroup::element(std::size_t index) const {
    ModElem x(factors_.size());
    for (std::size_t j = factors_.size(); j-- > 0;) {
        x[j] = static_cast<std::int64_t>(index % static_cast<std::size_t>(factors_[j]));
        index /= static_cast<std::size_t>(factors_[j]);
    }
    return x;
}

std::size_t FiniteAbelianGroup::index(const ModElem& x) const {
    if (x.size() != factors_.size()) throw InputError("element has the wrong number of coordinates");
    std::size_t idx = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        idx = idx * static_cast<std::size_t>(factors_[j]) + static_cast<std::size_t>(mod_floor(x[j], factors_[j]));
    }
    return idx;
}

ModElem FiniteAbelianGroup::add(const ModElem& a, const ModElem& b) const {
    ModElem c(factors_.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = mod_floor(a[j] + b[j], factors_[j]);
    return c;
}

ModElem FiniteAbelianGroup::neg(const ModElem& a) const {
    ModElem c(factors_.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = mod_floor(-a[j], factors_[j]);
    return c;
}

ModElem FiniteAbelianGroup::reduce(ModElem a) const {
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = mod_floor(a[j], factors_[j]);
    return a;
}

bool FiniteAbelianGroup::is_zero(const ModElem& a) const {
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (mod_floor(a[j], factors_[j]) != 0) return false;
    }
    return true;
}

namespace {

IntMatrix reduce_rows(IntMatrix m, const std::vector<std::int64_t>& row_factors) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = mod_floor(m(i, j), row_factors[i]);
    }
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, const std::vector<std::int64_t>& row_factors) {
    IntMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < b.cols; ++j) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < a.cols; ++k) s = mod_floor(s + a(i, k) * b(k, j), row_factors[i]);
            c(i, j) = s;
        }
    }
    return c;
}

ModElem apply_matrix(const IntMatrix& m, const ModElem& x, const std::vector<std::int64_t>& row_factors) {
    ModElem y(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < m.cols; ++j) s = mod_floor(s + m(i, j) * x[j], row_factors[i]);
        y[i] = s;
    }
    return y;
}

// d_i | a_ij * d_j makes x_j -> a_ij x_j a well-defined map Z/d_j -> Z/d_i.
void check_well_defined(const IntMatrix& m, const std::vector<std::int64_t>& row_factors,
                        const std::vector<std::int64_t>& col_factors, const std::string& what) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (mod_floor(m(i, j) * col_factors[j], row_factors[i]) != 0) {
                throw InputError(what + ": entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") does not respect the factor structure");
            }
        }
    }
}

} // namespace

GModule::GModule(GroupPtr group, std::vector<std::int64_t> factors, std::vector<IntMatrix> generator_matrices)
    : group_(std::move(group)), coeffs_(std::move(factors)), gen_matrices_(std::move(generator_matrices)) {
    if (!group_) throw InputError("module needs a group");
    const auto& d = coeffs_.factors();
    for (auto f : d) {
        if (f < 2) throw InputError("module invariant factors must be at least 2");
    }
    const auto& gens = group_->generators();
    if (gen_matrices_.size() != gens.size()) {
        throw InputError("expected one action matrix per group generator (" + std::to_string(gens.size()) + "), got " +
                         std::to_string(gen_matrices_.size()));
    }
    const std::size_t k = d.size();
    for (std::size_t s = 0; s < gen_matrices_.size(); ++s) {
        auto& m = gen_matrices_[s];
        if (m.rows != k || m.cols != k) throw InputError("action matrix dimensions do not match the factor list");
        check_well_defined(m, d, d, "action matrix of generator " + std::to_string(s));
        m = reduce_rows(m, d);
        if (coeffs_.cardinality() <= (1u << 16)) {
            std::vector<bool> hit(coeffs_.cardinality(), false);
            for (std::size_t x = 0; x < coeffs_.cardinality(); ++x) {
                hit[coeffs_.index(apply_matrix(m, coeffs_.element(x), d))] = true;
            }
            for (bool h : hit) {
                if (!h) throw InputError("action matrix of generator " + std::to_string(s) + " is not invertible");
            }
        }
    }

    const std::size_t n = group_->order();
    element_matrices_.assign(n, IntMatrix());
    std::vector<bool> set(n, false);
    element_matrices_[group_->identity()] = IntMatrix::identity(k);
    set[group_->identity()] = true;
    std::queue<Elem> todo;
    todo.push(group_->identity());
    while (!todo.empty()) {
        const Elem x = todo.front();
        todo.pop();
        for (std::size_t s = 0; s < gens.size(); ++s) {
            const Elem y = group_->mul(x, gens[s]);
            if (!set[y]) {
                element_matrices_[y] = multiply(element_matrices_[x], gen_matrices_[s], d);
                set[y] = true;
                todo.push(y);
            }
        }
    }
    for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
            if (multiply(element_matrices_[a], element_matrices_[b], d).data !=
                element_matrices_[group_->mul(a, b)].data) {
                throw InputError("action is not a homomorphism; witness pair (" + std::to_string(a) + ", " +
                                 std::to_string(b) + ")");
            }
        }
    }
}

ModElem GModule::act(Elem g, const ModElem& x) const { return apply_matrix(element_matrices_[g], x, factors()); }

bool GModule::is_trivial_action() const {
    const auto id = IntMatrix::identity(rank());
    for (const auto& m : gen_matrices_) {
        if (m.data != id.data) return false;
    }
    return true;
}

bool GModule::operator==(const GModule& other) const {
    if (!(*group_ == *other.group_) || factors() != other.factors()) return false;
    for (Elem g = 0; g < group_->order(); ++g) {
        if (element_matrices_[g].data != other.element_matrices_[g].data) return false;
    }
    return true;
}

ModulePtr make_module(const GroupPtr& group, const std::vector<std::int64_t>& factors,
                      const std::vector<IntMatrix>& generator_matrices) {
    return std::make_shared<const GModule>(group, factors, generator_matrices);
}

ModulePtr make_trivial_module(const GroupPtr& group, const std::vector<std::int64_t>& factors) {
    std::vector<IntMatrix> mats(group->generators().size(), IntMatrix::identity(factors.size()));
    return make_module(group, factors, mats);
}

GroupPtr real_galois_group() { return make_cyclic(2); }

ModulePtr mu_m_real(std::int64_t m) {
    if (m < 2) throw InputError("mu_m needs m >= 2");
    return make_module(real_galois_group(), {m}, {IntMatrix::scalar(m - 1)});
}

ModulePtr pullback_module(const GroupHom& f, const ModulePtr& m) {
    if (!(*f.target() == m->group())) throw InputError("pullback_module: module lives over a different group");
    std::vector<IntMatrix> mats;
    for (Elem s : f.source()->generators()) mats.push_back(m->action(f(s)));
    return make_module(f.source(), m->factors(), mats);
}

ModuleHom::ModuleHom(ModulePtr source, ModulePtr target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (!(source_->group() == target_->group())) throw InputError("module homomorphism between different groups");
    if (matrix_.rows != target_->rank() || matrix_.cols != source_->rank()) {
        throw InputError("module homomorphism matrix has the wrong shape");
    }
    check_well_defined(matrix_, target_->factors(), source_->factors(), "module homomorphism");
    matrix_ = reduce_rows(matrix_, target_->factors());
    const auto& gens = source_->group().generators();
    for (std::size_t s = 0; s < gens.size(); ++s) {
        const auto lhs = multiply(matrix_, source_->action(gens[s]), target_->factors());
        const auto rhs = multiply(target_->action(gens[s]), matrix_, target_->factors());
        if (lhs.data != rhs.data) {
            throw InputError("coefficient map is not equivariant; witness generator " + std::to_string(gens[s]));
        }
    }
}

ModElem ModuleHom::operator()(const ModElem& x) const { return apply_matrix(matrix_, x, target_->factors()); }

GroupPtr abelian_group_of(const FiniteAbelianGroup& a) { return make_abelian(a.factors()); }

} // namespace galcoh
