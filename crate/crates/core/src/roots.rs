//! Root systems and Chevalley structure constants, in exact arithmetic.
//!
//! Positive roots are enumerated from the Cartan matrix by root strings,
//! ordered by height then lexicographically; that order fixes the
//! extraspecial pairs and hence all signs deterministically.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::Zero;

use crate::algebra::AlgebraName;

/// Small exact rational used by the root-level arithmetic.
pub type Q = Ratio<i64>;

fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Cartan matrix convention: `a[i][j] = 2(α_i, α_j)/(α_i, α_i)`.
fn cartan_data(name: AlgebraName) -> (Vec<Vec<i64>>, Vec<Q>) {
    use AlgebraName::*;
    // simply-laced helper: adjacency list on 1-based nodes
    fn laced(rank: usize, edges: &[(usize, usize)]) -> (Vec<Vec<i64>>, Vec<Q>) {
        let mut a = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            a[i][i] = 2;
        }
        for &(x, y) in edges {
            a[x - 1][y - 1] = -1;
            a[y - 1][x - 1] = -1;
        }
        (a, vec![qi(1); rank])
    }
    match name {
        A1 => (vec![vec![2]], vec![qi(1)]),
        A2 => laced(2, &[(1, 2)]),
        D4 => laced(4, &[(1, 2), (2, 3), (2, 4)]),
        E6 => laced(6, &[(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]),
        E7 => laced(7, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]),
        E8 => laced(8, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]),
        G2 => {
            // α1 short (length² 2/3), α2 long (length² 2)
            (vec![vec![2, -3], vec![-1, 2]], vec![Q::new(1, 3), qi(1)])
        }
        F4 => {
            // chain 1-2=>3-4; α1, α2 long, α3, α4 short (length² 1)
            (
                vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -1, 0],
                    vec![0, -2, 2, -1],
                    vec![0, 0, -1, 2],
                ],
                vec![qi(1), qi(1), Q::new(1, 2), Q::new(1, 2)],
            )
        }
    }
}

/// A root written over the simple roots.
pub type RootVec = Vec<i64>;

/// Root with a sign: `(positive?, index into the positive-root list)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SignedRoot {
    pos: bool,
    idx: usize,
}

/// Positive-root data plus the Chevalley coefficients derived from it.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub name: AlgebraName,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths `d_i = (α_i, α_i)/2` of the simple roots.
    pub simple_half_norms: Vec<Q>,
    /// Positive roots sorted by height then lexicographically.
    pub positive_roots: Vec<RootVec>,
    pub root_heights: Vec<i64>,
    index: HashMap<RootVec, usize>,
    /// `N_{α,β}` for positive pairs with `α+β` a root, keyed by indices.
    n_table: HashMap<(usize, usize), Q>,
}

impl RootSystem {
    /// Enumerate the root system and compute all Chevalley coefficients.
    pub fn build(name: AlgebraName) -> RootSystem {
        let (cartan, half_norms) = cartan_data(name);
        let rank = cartan.len();

        let mut roots: Vec<RootVec> = Vec::new();
        for i in 0..rank {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            roots.push(v);
        }
        let mut index: HashMap<RootVec, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();

        // layer-by-layer closure using root strings
        let mut frontier: Vec<RootVec> = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..rank {
                    // pairing <β, α_i∨> = Σ_j b_j a[i][j]
                    let n: i64 = (0..rank).map(|j| beta[j] * cartan[i][j]).sum();
                    // p = max k with β - k α_i a root
                    let mut p = 0i64;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if index.contains_key(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - n >= 1 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !index.contains_key(&up) {
                            index.insert(up.clone(), usize::MAX);
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            frontier = next;
        }

        // canonical order: height, then lexicographic
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let index: HashMap<RootVec, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let heights: Vec<i64> = roots.iter().map(|r| r.iter().sum()).collect();

        let mut rs = RootSystem {
            name,
            rank,
            cartan,
            simple_half_norms: half_norms,
            positive_roots: roots,
            root_heights: heights,
            index,
            n_table: HashMap::new(),
        };
        rs.fill_n_table();
        rs
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Adjoint dimension `rank + 2 * #positive`.
    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.num_positive()
    }

    fn lookup(&self, v: &RootVec) -> Option<usize> {
        self.index.get(v).copied()
    }

    fn signed_lookup(&self, v: &RootVec) -> Option<SignedRoot> {
        if let Some(i) = self.lookup(v) {
            return Some(SignedRoot { pos: true, idx: i });
        }
        let neg: RootVec = v.iter().map(|x| -x).collect();
        self.lookup(&neg).map(|i| SignedRoot { pos: false, idx: i })
    }

    /// Exact inner product of two roots.
    fn inner(&self, a: &RootVec, b: &RootVec) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if a[i] != 0 && b[j] != 0 {
                    s += qi(a[i] * b[j]) * self.simple_half_norms[i] * qi(self.cartan[i][j]);
                }
            }
        }
        s
    }

    /// Squared length of positive root `k`.
    pub fn norm2(&self, k: usize) -> Q {
        self.inner(&self.positive_roots[k], &self.positive_roots[k])
    }

    /// Integer pairing `<α_k, α_l∨>` of positive root `k` against the
    /// `l`-th simple coroot.
    pub fn pairing_with_simple(&self, k: usize, l: usize) -> i64 {
        let beta = &self.positive_roots[k];
        (0..self.rank).map(|j| beta[j] * self.cartan[l][j]).sum()
    }

    /// Integer coordinates of the coroot of positive root `k` over the
    /// simple coroots.
    pub fn coroot_coords(&self, k: usize) -> Vec<i64> {
        let alpha = &self.positive_roots[k];
        let d_alpha = self.norm2(k) / qi(2);
        (0..self.rank)
            .map(|l| {
                let c = qi(alpha[l]) * self.simple_half_norms[l] / d_alpha;
                assert!(c.is_integer(), "coroot coordinate not integral");
                c.to_integer()
            })
            .collect()
    }

    fn vec_add(a: &RootVec, b: &RootVec) -> RootVec {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn vec_sub(a: &RootVec, b: &RootVec) -> RootVec {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    /// `p`-value of the string: max `k` with `β - kα` a root.
    fn string_down(&self, alpha: &RootVec, beta: &RootVec) -> i64 {
        let mut p = 0;
        let mut probe = beta.clone();
        loop {
            probe = Self::vec_sub(&probe, alpha);
            if self.signed_lookup(&probe).is_some() {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Compute all `N_{α,β}` for positive pairs via the extraspecial-pair
    /// convention, processing sums in canonical order.
    fn fill_n_table(&mut self) {
        let n = self.num_positive();
        for gamma in 0..n {
            if self.root_heights[gamma] == 1 {
                continue;
            }
            let gv = self.positive_roots[gamma].clone();
            // special pairs (a < b) with α_a + α_b = γ
            let mut pairs = Vec::new();
            for a in 0..n {
                if self.root_heights[a] * 2 >= self.root_heights[gamma] + 1 {
                    // heights beyond the midpoint can only repeat pairs
                }
                let diff = Self::vec_sub(&gv, &self.positive_roots[a]);
                if let Some(b) = self.lookup(&diff) {
                    if a < b {
                        pairs.push((a, b));
                    }
                }
            }
            pairs.sort();
            let (a0, b0) = pairs[0];
            let p = self.string_down(&self.positive_roots[a0], &self.positive_roots[b0]);
            self.n_table.insert((a0, b0), qi(p + 1));
            self.n_table.insert((b0, a0), qi(-(p + 1)));

            let gnorm = self.inner(&gv, &gv);
            for &(x, y) in pairs.iter().skip(1) {
                // quadruple (α0, β0, -ξ, -η) with α0+β0 = ξ+η = γ
                let alpha = self.positive_roots[a0].clone();
                let beta = self.positive_roots[b0].clone();
                let xi = self.positive_roots[x].clone();
                let eta = self.positive_roots[y].clone();
                let _ = &eta;
                let mut acc = Q::zero();
                // term N(β0,-ξ) N(α0,-η) / (β0-ξ, β0-ξ)
                let bmx = Self::vec_sub(&beta, &xi);
                if self.signed_lookup(&bmx).is_some() {
                    let t = self.n_mixed(b0, x) * self.n_mixed(a0, y);
                    acc += t / self.inner(&bmx, &bmx);
                }
                // term N(-ξ,α0) N(β0,-η) / (α0-ξ, α0-ξ)
                let amx = Self::vec_sub(&alpha, &xi);
                if self.signed_lookup(&amx).is_some() {
                    // N(-ξ, α0) = -N(ξ, -α0) = ... = n_mixed with sign
                    let t = -self.n_mixed_rev(x, a0) * self.n_mixed(b0, y);
                    acc += t / self.inner(&amx, &amx);
                }
                let n_extra = self.n_table[&(a0, b0)];
                let val = gnorm * acc / n_extra;
                assert!(val.is_integer(), "non-integral Chevalley coefficient");
                // magnitude check: |N| = p+1 for the ξ-string through η
                let pxy = self.string_down(&self.positive_roots[x], &self.positive_roots[y]);
                assert_eq!(val.to_integer().abs(), pxy + 1, "Chevalley magnitude");
                self.n_table.insert((x, y), val);
                self.n_table.insert((y, x), -val);
            }
        }
    }

    /// `N(α_a, -α_b)` for distinct positive roots, reduced to the table.
    fn n_mixed(&self, a: usize, b: usize) -> Q {
        let av = &self.positive_roots[a];
        let bv = &self.positive_roots[b];
        let diff = Self::vec_sub(av, bv);
        match self.signed_lookup(&diff) {
            None => Q::zero(),
            Some(SignedRoot { pos: true, idx: s }) => {
                // α - β = σ > 0:  N(α,-β) = -(σ,σ) N(β,σ) / (α,α)
                -self.norm2(s) * self.n_pos(b, s) / self.norm2(a)
            }
            Some(SignedRoot { pos: false, idx: t }) => {
                // β - α = τ > 0:  N(α,-β) = -(τ,τ) N(α,τ) / (β,β)
                -self.norm2(t) * self.n_pos(a, t) / self.norm2(b)
            }
        }
    }

    /// `N(ξ, -α)` used with reversed arguments; same reduction.
    fn n_mixed_rev(&self, xi: usize, alpha: usize) -> Q {
        self.n_mixed(xi, alpha)
    }

    /// Table lookup `N(α_a, α_b)`, zero when the sum is not a root.
    fn n_pos(&self, a: usize, b: usize) -> Q {
        self.n_table.get(&(a, b)).copied().unwrap_or_else(Q::zero)
    }

    /// Signed `N(x, y)` for arbitrary signed roots (sum must not vanish).
    fn n_signed(&self, x: SignedRoot, y: SignedRoot) -> Q {
        match (x.pos, y.pos) {
            (true, true) => self.n_pos(x.idx, y.idx),
            (false, false) => -self.n_pos(x.idx, y.idx),
            (true, false) => self.n_mixed(x.idx, y.idx),
            (false, true) => -self.n_mixed(y.idx, x.idx),
        }
    }

    /// Public signed coefficient `N(α_a, α_b)` for positive pairs.
    pub fn n_coeff(&self, a: usize, b: usize) -> Q {
        self.n_pos(a, b)
    }

    /// `N(α_a, -α_b)` for distinct positive roots.
    pub fn n_coeff_mixed(&self, a: usize, b: usize) -> Q {
        debug_assert_ne!(a, b);
        self.n_signed(
            SignedRoot { pos: true, idx: a },
            SignedRoot { pos: false, idx: b },
        )
    }

    /// Index of the positive root equal to `α_a + α_b`, if any.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let v = Self::vec_add(&self.positive_roots[a], &self.positive_roots[b]);
        self.lookup(&v)
    }

    /// Signed index of `α_a - α_b`: `(positive?, index)`.
    pub fn diff_index(&self, a: usize, b: usize) -> Option<(bool, usize)> {
        let v = Self::vec_sub(&self.positive_roots[a], &self.positive_roots[b]);
        self.signed_lookup(&v).map(|s| (s.pos, s.idx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use AlgebraName::*;

    #[test]
    fn positive_root_counts() {
        for (name, count, rank) in [
            (A1, 1usize, 1usize),
            (A2, 3, 2),
            (G2, 6, 2),
            (D4, 12, 4),
            (F4, 24, 4),
            (E6, 36, 6),
            (E7, 63, 7),
            (E8, 120, 8),
        ] {
            let rs = RootSystem::build(name);
            assert_eq!(rs.rank, rank, "{name}");
            assert_eq!(rs.num_positive(), count, "{name}");
        }
    }

    #[test]
    fn closure_and_order() {
        let rs = RootSystem::build(F4);
        // closure: if α+β is a root it is in the list
        let n = rs.num_positive();
        for a in 0..n {
            for b in 0..n {
                let v = RootSystem::vec_add(&rs.positive_roots[a], &rs.positive_roots[b]);
                let height: i64 = v.iter().sum();
                if rs.lookup(&v).is_some() {
                    assert!(height == rs.root_heights[a] + rs.root_heights[b]);
                }
            }
        }
        // sorted by height then lex
        for w in rs.positive_roots.windows(2) {
            let ha: i64 = w[0].iter().sum();
            let hb: i64 = w[1].iter().sum();
            assert!(ha < hb || (ha == hb && w[0] < w[1]));
        }
    }

    #[test]
    fn chevalley_coefficients_are_small_integers() {
        for name in [A2, G2, D4, F4] {
            let rs = RootSystem::build(name);
            let n = rs.num_positive();
            let mut max_abs = 0i64;
            for a in 0..n {
                for b in 0..n {
                    if rs.sum_index(a, b).is_some() {
                        let v = rs.n_coeff(a, b);
                        assert!(v.is_integer());
                        assert!(!v.is_zero());
                        max_abs = max_abs.max(v.to_integer().abs());
                        // antisymmetry
                        assert_eq!(rs.n_coeff(b, a), -v);
                    }
                }
            }
            let bound = if name == G2 { 3 } else { 2 };
            assert!(max_abs <= bound, "{name}: |N| ≤ {bound}, got {max_abs}");
        }
    }

    #[test]
    fn coroots_are_integral() {
        for name in [G2, F4, E6] {
            let rs = RootSystem::build(name);
            for k in 0..rs.num_positive() {
                let c = rs.coroot_coords(k);
                assert_eq!(c.len(), rs.rank);
            }
        }
    }
}
