//! Killing-orthonormal structure constants built from root systems.
//!
//! The generators are the compact-form combinations: orthonormalized
//! Cartan elements first, then per positive root `α` (in canonical root
//! order) the pair `e_α + e_{-α}` and `-i(e_α - e_{-α})`. In that basis
//! the bracket coefficients are real and, once the Killing form is
//! normalised to the identity, totally antisymmetric.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use ndarray::Array2;
use sha2::{Digest, Sha256};

use crate::algebra::{algebra, AlgebraName, FamilyAlgebra};
use crate::linalg::{cholesky, invert_upper};
use crate::report::VerificationReport;
use crate::roots::RootSystem;
use crate::scalar::Real;
use crate::{Error, Result};

pub const FORMAT_VERSION: &str = "v1";

/// Sparse, totally antisymmetric rank-3 tensor `c_{ijk}` with canonical
/// entries `i < j < k`; all other index orders follow by antisymmetry.
#[derive(Debug, Clone)]
pub struct StructureTensor<F: Real> {
    pub algebra: FamilyAlgebra,
    pub dim: usize,
    /// Canonical entries `(i, j, k, value)` with `i < j < k`.
    pub entries: Vec<(u32, u32, u32, F)>,
    /// Construction metadata: basis ordering and determinism tag.
    pub provenance: String,
    /// Per-`t` expansion: entries `(x, y, c_{txy})`.
    ct: Vec<Vec<(u32, u32, F)>>,
}

impl<F: Real> StructureTensor<F> {
    /// Build the tensor for one catalog algebra.
    pub fn build(name: AlgebraName) -> Result<Self> {
        let rs = RootSystem::build(name);
        let alg = algebra(name);
        let rank = rs.rank;
        let npos = rs.num_positive();
        let dim = rs.dimension();
        debug_assert_eq!(dim as u64, alg.dim);

        let ui = |k: usize| rank + 2 * k;
        let vi = |k: usize| rank + 2 * k + 1;

        // raw bracket table over pairs a < b, coefficients exact-in-f64
        let mut table: HashMap<(usize, usize), Vec<(usize, f64)>> = HashMap::new();
        let mut push = |a: usize, b: usize, terms: Vec<(usize, f64)>| {
            let terms: Vec<(usize, f64)> = terms.into_iter().filter(|t| t.1 != 0.0).collect();
            if terms.is_empty() {
                return;
            }
            if a < b {
                table.entry((a, b)).or_default().extend(terms);
            } else {
                table
                    .entry((b, a))
                    .or_default()
                    .extend(terms.into_iter().map(|(k, v)| (k, -v)));
            }
        };
        let qf = |q: crate::roots::Q| -> f64 { *q.numer() as f64 / *q.denom() as f64 };

        for l in 0..rank {
            for k in 0..npos {
                let a = rs.pairing_with_simple(k, l) as f64;
                push(l, ui(k), vec![(vi(k), a)]);
                push(l, vi(k), vec![(ui(k), -a)]);
            }
        }
        for k in 0..npos {
            let cr = rs.coroot_coords(k);
            let terms: Vec<(usize, f64)> = cr
                .iter()
                .enumerate()
                .map(|(l, &c)| (l, 2.0 * c as f64))
                .collect();
            push(ui(k), vi(k), terms);
        }
        for j in 0..npos {
            for k in (j + 1)..npos {
                let nsum = qf(rs.n_coeff(j, k));
                let sum = rs.sum_index(j, k);
                let nmix = qf(rs.n_coeff_mixed(j, k));
                let diff = rs.diff_index(j, k);
                // [u_j, u_k] and [v_j, v_k]
                let mut uu_terms = Vec::new();
                let mut vv_terms = Vec::new();
                if let Some(s) = sum {
                    uu_terms.push((ui(s), nsum));
                    vv_terms.push((ui(s), -nsum));
                }
                if let Some((pos, d)) = diff {
                    let coef = if pos { -nmix } else { nmix };
                    uu_terms.push((ui(d), coef));
                    vv_terms.push((ui(d), coef));
                }
                push(ui(j), ui(k), uu_terms);
                push(vi(j), vi(k), vv_terms);
                // [u_j, v_k]
                let mut uv_terms = Vec::new();
                if let Some(s) = sum {
                    uv_terms.push((vi(s), nsum));
                }
                if let Some((_, d)) = diff {
                    uv_terms.push((vi(d), nmix));
                }
                push(ui(j), vi(k), uv_terms);
                // [v_j, u_k] = -[u_k, v_j], and N(α_k, α_j) = -N(α_j, α_k)
                let nmix_kj = qf(rs.n_coeff_mixed(k, j));
                let mut vu_terms = Vec::new();
                if let Some(s) = sum {
                    vu_terms.push((vi(s), nsum));
                }
                if let Some((_, d)) = diff {
                    vu_terms.push((vi(d), -nmix_kj));
                }
                push(vi(j), ui(k), vu_terms);
            }
        }

        // Killing Gram from the raw table: kappa_{jk} = Tr(ad_j ad_k)
        let mut adj: Vec<HashMap<(usize, usize), f64>> = vec![HashMap::new(); dim];
        for (&(a, b), terms) in &table {
            for &(k, v) in terms {
                *adj[a].entry((b, k)).or_insert(0.0) += v;
                *adj[b].entry((a, k)).or_insert(0.0) -= v;
            }
        }
        let mut gram = Array2::<f64>::zeros((dim, dim));
        for j in 0..dim {
            for (&(q, p), &v) in &adj[j] {
                for k in 0..dim {
                    if let Some(&w) = adj[k].get(&(p, q)) {
                        gram[[j, k]] += v * w;
                    }
                }
            }
        }
        // compact form: -gram must be positive definite
        let neg = gram.mapv(|x| -x);
        if std::env::var("EXLIE_DEBUG_GRAM").is_ok() {
            eprintln!("neg gram diag: {:?}", (0..dim).map(|i| neg[[i,i]]).collect::<Vec<_>>());
            eprintln!("neg gram cartan block:");
            for i in 0..rank { eprintln!("{:?}", (0..rank).map(|j| neg[[i,j]]).collect::<Vec<_>>()); }
        }
        let cart = neg.slice(ndarray::s![0..rank, 0..rank]).to_owned();
        let r = cholesky(&cart, 1e-9).ok_or_else(|| {
            Error::ConstructionFailure("Killing Gram not positive definite on the Cartan block".into())
        })?;
        let s_cart = invert_upper(&r).t().to_owned(); // S = R^{-T}
        let s_cart_inv = r.t().to_owned();
        let mut scale = vec![0.0f64; dim];
        for i in rank..dim {
            let g = neg[[i, i]];
            if g <= 1e-9 {
                return Err(Error::ConstructionFailure(format!(
                    "Killing Gram not positive definite at generator {i}"
                )));
            }
            scale[i] = 1.0 / g.sqrt();
        }

        // transform: c'_{ijk} = S_{ia} S_{jb} gamma_{abc} (S^{-1})_{ck}
        let s_row = |i: usize| -> Vec<(usize, f64)> {
            if i < rank {
                (0..rank)
                    .filter(|&a| s_cart[[i, a]] != 0.0)
                    .map(|a| (a, s_cart[[i, a]]))
                    .collect()
            } else {
                vec![(i, scale[i])]
            }
        };
        // raw index c expands as T_c = Σ_k (S^{-1})_{ck} T'_k
        let sinv_col = |c: usize| -> Vec<(usize, f64)> {
            if c < rank {
                (0..rank)
                    .filter(|&k| s_cart_inv[[c, k]] != 0.0)
                    .map(|k| (k, s_cart_inv[[c, k]]))
                    .collect()
            } else {
                vec![(c, 1.0 / scale[c])]
            }
        };

        let mut pair_exp: HashMap<(usize, usize), HashMap<usize, f64>> = HashMap::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let mut acc: HashMap<usize, f64> = HashMap::new();
                for &(a, sa) in &s_row(i) {
                    for &(b, sb) in &s_row(j) {
                        let (lo, hi, sgn) = if a < b {
                            (a, b, 1.0)
                        } else if b < a {
                            (b, a, -1.0)
                        } else {
                            continue;
                        };
                        if let Some(terms) = table.get(&(lo, hi)) {
                            for &(c, v) in terms {
                                let w = sa * sb * sgn * v;
                                for &(k, sk) in &sinv_col(c) {
                                    *acc.entry(k).or_insert(0.0) += w * sk;
                                }
                            }
                        }
                    }
                }
                acc.retain(|_, v| v.abs() > 1e-13);
                if !acc.is_empty() {
                    pair_exp.insert((i, j), acc);
                }
            }
        }

        // canonical entries from pairs (i, j) with k > j; cross-check the
        // remaining coefficients against antisymmetry
        let mut canonical: Vec<(u32, u32, u32, F)> = Vec::new();
        for (&(i, j), terms) in &pair_exp {
            for (&k, &v) in terms {
                if k > j {
                    canonical.push((i as u32, j as u32, k as u32, F::of(v)));
                }
            }
        }
        canonical.sort_by_key(|&(i, j, k, _)| (i, j, k));
        let canon_map: HashMap<(u32, u32, u32), f64> = canonical
            .iter()
            .map(|&(i, j, k, v)| ((i, j, k), v.to_f64().unwrap()))
            .collect();
        for (&(i, j), terms) in &pair_exp {
            for (&k, &v) in terms {
                let mut tri = [i, j, k];
                tri.sort_unstable();
                let [p, q, r] = tri;
                if p == q || q == r {
                    return Err(Error::ConstructionFailure(format!(
                        "repeated index in bracket expansion ({i},{j})->{k}"
                    )));
                }
                let canon = canon_map
                    .get(&(p as u32, q as u32, r as u32))
                    .copied()
                    .unwrap_or(0.0);
                let sgn = perm_sign(i, j, k);
                if (v - sgn * canon).abs() > 1e-9 {
                    return Err(Error::ConstructionFailure(format!(
                        "bracket table not totally antisymmetric at ({i},{j},{k}): v={v}, sgn={sgn}, canon={canon}"
                    )));
                }
            }
        }

        let provenance = format!(
            "basis=cartan-gs+root-pairs order=height-lex roots={npos} rank={rank} deterministic=yes format={FORMAT_VERSION}"
        );
        Ok(Self::from_entries(alg, dim, canonical, provenance))
    }

    /// Assemble from canonical entries (used by `build` and `load`).
    pub fn from_entries(
        algebra: FamilyAlgebra,
        dim: usize,
        entries: Vec<(u32, u32, u32, F)>,
        provenance: String,
    ) -> Self {
        let mut ct: Vec<Vec<(u32, u32, F)>> = vec![Vec::new(); dim];
        for &(i, j, k, v) in &entries {
            ct[i as usize].push((j, k, v));
            ct[i as usize].push((k, j, -v));
            ct[j as usize].push((k, i, v));
            ct[j as usize].push((i, k, -v));
            ct[k as usize].push((i, j, v));
            ct[k as usize].push((j, i, -v));
        }
        StructureTensor {
            algebra,
            dim,
            entries,
            provenance,
            ct,
        }
    }

    /// All nonzero `(x, y, c_{txy})` for fixed first index `t`.
    pub fn row(&self, t: usize) -> &[(u32, u32, F)] {
        &self.ct[t]
    }

    /// Dense antisymmetric matrix `(C_t)_{xy} = c_{txy}`.
    pub fn c_matrix(&self, t: usize) -> Array2<F> {
        let mut m = Array2::<F>::zeros((self.dim, self.dim));
        for &(x, y, v) in &self.ct[t] {
            m[[x as usize, y as usize]] = v;
        }
        m
    }

    /// All dense `C_t` matrices.
    pub fn c_matrices(&self) -> Vec<Array2<F>> {
        (0..self.dim).map(|t| self.c_matrix(t)).collect()
    }

    /// Contract `A_v = Σ_i v_i C_i` for an adjoint vector `v`.
    pub fn contract_vector(&self, v: &[F]) -> Array2<F> {
        let mut m = Array2::<F>::zeros((self.dim, self.dim));
        for (t, row) in self.ct.iter().enumerate() {
            let vt = v[t];
            if vt == F::zero() {
                continue;
            }
            for &(x, y, c) in row {
                m[[x as usize, y as usize]] += vt * c;
            }
        }
        m
    }

    /// Gram `G_{jk} = Σ_{pq} c_{jpq} c_{kpq}`; equals the identity when the
    /// normalisation holds.
    pub fn gram(&self) -> Array2<F> {
        let mut by_pq: HashMap<(u32, u32), Vec<(usize, F)>> = HashMap::new();
        for (t, row) in self.ct.iter().enumerate() {
            for &(x, y, v) in row {
                by_pq.entry((x, y)).or_default().push((t, v));
            }
        }
        let mut g = Array2::<F>::zeros((self.dim, self.dim));
        for list in by_pq.values() {
            for &(j, vj) in list {
                for &(k, vk) in list {
                    g[[j, k]] += vj * vk;
                }
            }
        }
        g
    }
}

fn perm_sign(i: usize, j: usize, k: usize) -> f64 {
    // sign of the permutation sorting (i, j, k)
    let mut s = 1.0;
    let mut t = [i, j, k];
    if t[0] > t[1] {
        t.swap(0, 1);
        s = -s;
    }
    if t[1] > t[2] {
        t.swap(1, 2);
        s = -s;
    }
    if t[0] > t[1] {
        s = -s;
    }
    s
}

/// Default residual tolerance for a built tensor, per the conditioning of
/// the larger eigenproblems.
pub fn default_tolerance(dim: usize) -> f64 {
    if dim <= 52 {
        1e-10
    } else {
        1e-8
    }
}

/// Verify the defining identities of a built tensor: orthonormality of the
/// Killing contraction, the adjoint Casimir, the Jacobi identity, and the
/// two cubic/quartic contraction constants.
pub fn verify_structure<F: Real>(st: &StructureTensor<F>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let alg = st.algebra.name.to_string();
    let d = st.dim;
    let tol = default_tolerance(d);

    // (a4) and the adjoint Casimir (a6) share the contraction
    let gram = st.gram();
    let mut a4 = 0.0f64;
    for j in 0..d {
        for k in 0..d {
            let want = if j == k { 1.0 } else { 0.0 };
            let got = gram[[j, k]].to_f64().unwrap();
            a4 = a4.max((got - want).abs());
        }
    }
    rep.push("a4-orthonormality", "a4", &alg, a4, tol, (d * d) as u64);
    rep.push("a6-adjoint-casimir", "a6", &alg, a4, tol, (d * d) as u64);

    let cmats = st.c_matrices();

    // Jacobi: [C_i, C_j] = -c_{ijk} C_k, exhaustive pairs for small D,
    // sampled so that at least 1e5 (i,j,k) triples are covered otherwise
    let exhaustive = d <= 28;
    let pair_list: Vec<(usize, usize)> = if exhaustive {
        (0..d)
            .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
            .collect()
    } else {
        let need = 100_000usize.div_ceil(d).max(64);
        deterministic_pairs(d, need)
    };
    let mut jac = 0.0f64;
    for &(i, j) in &pair_list {
        let mut comm = cmats[i].dot(&cmats[j]);
        comm = comm - cmats[j].dot(&cmats[i]);
        for &(x, y, v) in st.row(i) {
            if x as usize == j {
                // c_{ijk} with k = y
                let k = y as usize;
                comm.scaled_add(v, &cmats[k]);
            }
        }
        jac = jac.max(
            comm.iter()
                .map(|x| x.to_f64().unwrap().abs())
                .fold(0.0, f64::max),
        );
    }
    rep.push(
        "jacobi",
        "a1",
        &alg,
        jac,
        tol,
        (pair_list.len() * d) as u64,
    );

    // (x3): Tr(C_p C_q C_r) = 1/2 c_{pqr}
    let mut x3 = 0.0f64;
    let x3_pairs: Vec<(usize, usize)> = if d <= 52 {
        (0..d).flat_map(|p| (0..d).map(move |q| (p, q))).collect()
    } else {
        deterministic_pairs(d, 1500)
    };
    for &(p, q) in &x3_pairs {
        let m = cmats[p].dot(&cmats[q]);
        // residual against 1/2 c_{pqr} for every r
        let mut want = vec![0.0f64; d];
        for &(x, y, v) in st.row(p) {
            if x as usize == q {
                want[y as usize] = 0.5 * v.to_f64().unwrap();
            }
        }
        for r in 0..d {
            let tr: f64 = st
                .row(r)
                .iter()
                .map(|&(x, y, v)| v.to_f64().unwrap() * m[[y as usize, x as usize]].to_f64().unwrap())
                .sum();
            x3 = x3.max((tr - want[r]).abs());
        }
    }
    rep.push(
        "x3-cubic-contraction",
        "x3",
        &alg,
        x3,
        tol,
        (x3_pairs.len() * d) as u64,
    );

    // (x4): Σ_{pq} Tr(C_p C_q C_r) c_{pqs} = 1/2 δ_{rs}
    let mut x4 = 0.0f64;
    let svals: Vec<usize> = if d <= 52 {
        (0..d).collect()
    } else {
        (0..d).step_by(d.div_ceil(16)).collect()
    };
    for &s in &svals {
        let mut ks = Array2::<F>::zeros((d, d));
        for &(p, q, v) in st.row(s) {
            // c_{spq} = v, need c_{pqs} = v as well (cyclic)
            let prod = cmats[p as usize].dot(&cmats[q as usize]);
            ks.scaled_add(v, &prod);
        }
        for r in 0..d {
            let tr: f64 = st
                .row(r)
                .iter()
                .map(|&(x, y, v)| v.to_f64().unwrap() * ks[[y as usize, x as usize]].to_f64().unwrap())
                .sum();
            let want = if r == s { 0.5 } else { 0.0 };
            x4 = x4.max((tr - want).abs());
        }
    }
    rep.push(
        "x4-quartic-contraction",
        "x4",
        &alg,
        x4,
        tol,
        (svals.len() * d) as u64,
    );

    rep
}

/// Deterministic pseudo-random index pairs (no RNG dependency; a fixed
/// multiplicative sequence keeps runs reproducible).
pub fn deterministic_pairs(d: usize, count: usize) -> Vec<(usize, usize)> {
    let mut state = 0x9E3779B97F4A7C15u64;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let i = (state >> 33) as usize % d;
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = (state >> 33) as usize % d;
        if i != j {
            out.push((i, j));
        }
    }
    out
}

/// Deterministic index tuples of arbitrary arity in `0..bounds[i]`.
pub fn deterministic_tuples(bounds: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut state = 0xD1B54A32D192ED03u64;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut t = Vec::with_capacity(bounds.len());
        for &b in bounds {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            t.push((state >> 33) as usize % b.max(1));
        }
        out.push(t);
    }
    out
}

// ---------------------------------------------------------------------------
// file format

fn body_checksum(lines: &[String]) -> String {
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

mod hex {
    pub fn encode(bytes: impl AsRef<[u8]>) -> String {
        bytes.as_ref().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Write the tensor in the record format: a header line
/// `exlie-tensor v1 <algebra> <D> <count> sha256:<hex>` followed by one
/// `i j k value` record per canonical entry (17 significant digits).
pub fn save_tensor<F: Real>(st: &StructureTensor<F>, path: &Path) -> Result<()> {
    let lines: Vec<String> = st
        .entries
        .iter()
        .map(|&(i, j, k, v)| format!("{i} {j} {k} {:.16e}", v.to_f64().unwrap()))
        .collect();
    let checksum = body_checksum(&lines);
    let mut out = String::new();
    writeln!(
        out,
        "exlie-tensor {FORMAT_VERSION} {} {} {} sha256:{checksum}",
        st.algebra.name,
        st.dim,
        lines.len()
    )
    .unwrap();
    for l in &lines {
        out.push_str(l);
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Load a tensor written by [`save_tensor`], verifying schema and checksum.
pub fn load_tensor<F: Real>(path: &Path) -> Result<StructureTensor<F>> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Format("empty file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "exlie-tensor" {
        return Err(Error::Format(format!("bad header: `{header}`")));
    }
    if fields[1] != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported format version {}",
            fields[1]
        )));
    }
    let name: AlgebraName = fields[2]
        .parse()
        .map_err(|_| Error::Format(format!("unknown algebra `{}`", fields[2])))?;
    let alg = algebra(name);
    let dim: usize = fields[3]
        .parse()
        .map_err(|_| Error::Format("bad dimension".into()))?;
    if dim as u64 != alg.dim {
        return Err(Error::Format(format!(
            "dimension {dim} does not match algebra {name}"
        )));
    }
    let count: usize = fields[4]
        .parse()
        .map_err(|_| Error::Format("bad entry count".into()))?;
    let expected = fields[5]
        .strip_prefix("sha256:")
        .ok_or_else(|| Error::Format("missing checksum".into()))?;

    let body: Vec<String> = lines.map(str::to_owned).collect();
    let computed = body_checksum(&body);
    if body.len() != count || computed != expected {
        return Err(Error::Checksum {
            expected: expected.into(),
            computed: if body.len() != count {
                format!("{computed} (truncated: {} of {count} records)", body.len())
            } else {
                computed
            },
        });
    }
    let mut entries = Vec::with_capacity(count);
    for l in &body {
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 4 {
            return Err(Error::Format(format!("bad record `{l}`")));
        }
        let i: u32 = f[0].parse().map_err(|_| Error::Format("bad index".into()))?;
        let j: u32 = f[1].parse().map_err(|_| Error::Format("bad index".into()))?;
        let k: u32 = f[2].parse().map_err(|_| Error::Format("bad index".into()))?;
        let v: f64 = f[3].parse().map_err(|_| Error::Format("bad value".into()))?;
        if !(i < j && j < k && (k as usize) < dim) {
            return Err(Error::Format(format!("non-canonical record `{l}`")));
        }
        entries.push((i, j, k, F::of(v)));
    }
    let provenance = format!("loaded from {} format={FORMAT_VERSION}", path.display());
    Ok(StructureTensor::from_entries(alg, dim, entries, provenance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::AlgebraName::*;

    #[test]
    fn a1_is_the_scaled_epsilon_tensor() {
        let st = StructureTensor::<f64>::build(A1).unwrap();
        assert_eq!(st.dim, 3);
        assert_eq!(st.entries.len(), 1);
        let (_, _, _, v) = st.entries[0];
        assert!((v.abs() - 0.5f64.sqrt()).abs() < 1e-14);
        let rep = verify_structure(&st);
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep.max_residual() < 1e-12);
    }

    #[test]
    fn a2_matches_an_independent_su3_oracle() {
        // classic su(3) antisymmetric symbols rescaled to the a4 norm
        let s3 = 3.0f64.sqrt();
        let oracle = [
            (1, 2, 3, 1.0),
            (1, 4, 7, 0.5),
            (1, 6, 5, 0.5),
            (2, 4, 6, 0.5),
            (2, 5, 7, 0.5),
            (3, 4, 5, 0.5),
            (3, 7, 6, 0.5),
            (4, 5, 8, 0.5 * s3),
            (6, 7, 8, 0.5 * s3),
        ];
        let mut entries = Vec::new();
        for (i, j, k, v) in oracle {
            let mut tri = [(i - 1) as u32, (j - 1) as u32, (k - 1) as u32];
            let mut sgn = 1.0;
            if tri[0] > tri[1] {
                tri.swap(0, 1);
                sgn = -sgn;
            }
            if tri[1] > tri[2] {
                tri.swap(1, 2);
                sgn = -sgn;
            }
            if tri[0] > tri[1] {
                tri.swap(0, 1);
                sgn = -sgn;
            }
            entries.push((tri[0], tri[1], tri[2], sgn * v / s3));
        }
        entries.sort_by_key(|&(i, j, k, _)| (i, j, k));
        let oracle_st =
            StructureTensor::from_entries(crate::algebra::algebra(A2), 8, entries, "oracle".into());
        let rep_oracle = verify_structure(&oracle_st);
        assert!(rep_oracle.all_passed());

        // the root-system construction passes the same suite
        let st = StructureTensor::<f64>::build(A2).unwrap();
        let rep = verify_structure(&st);
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep.max_residual() < 1e-12);
        // same number of independent entries up to basis orientation is not
        // guaranteed, but both satisfy the full defining identity set
    }

    #[test]
    fn g2_killing_orthonormal() {
        let st = StructureTensor::<f64>::build(G2).unwrap();
        assert_eq!(st.dim, 14);
        let gram = st.gram();
        let mut dev = 0.0f64;
        for i in 0..14 {
            for j in 0..14 {
                let want = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((gram[[i, j]] - want).abs());
            }
        }
        assert!(dev < 1e-10, "max deviation {dev}");
    }

    #[test]
    fn perturbed_tensor_is_detected() {
        let st = StructureTensor::<f64>::build(A2).unwrap();
        let mut entries = st.entries.clone();
        entries[0].3 += 1e-3;
        let bad = StructureTensor::from_entries(
            st.algebra.clone(),
            st.dim,
            entries,
            "perturbed".into(),
        );
        let rep = verify_structure(&bad);
        let a4 = &rep.checks[0];
        assert_eq!(a4.identity_id, "a4-orthonormality");
        assert!(a4.residual > 1e-4, "sensitivity too low: {}", a4.residual);
        assert!(!rep.all_passed());
    }

    #[test]
    fn construction_is_deterministic() {
        let a = StructureTensor::<f64>::build(G2).unwrap();
        let b = StructureTensor::<f64>::build(G2).unwrap();
        assert_eq!(a.entries.len(), b.entries.len());
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert_eq!(x.0, y.0);
            assert_eq!(x.1, y.1);
            assert_eq!(x.2, y.2);
            assert_eq!(x.3.to_bits(), y.3.to_bits());
        }
    }

    #[test]
    fn save_load_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let st = StructureTensor::<f64>::build(G2).unwrap();
        let path = dir.path().join("g2.tensor");
        save_tensor(&st, &path).unwrap();
        let loaded: StructureTensor<f64> = load_tensor(&path).unwrap();
        assert_eq!(st.entries.len(), loaded.entries.len());
        for (a, b) in st.entries.iter().zip(&loaded.entries) {
            assert_eq!(a.0, b.0);
            assert_eq!(a.1, b.1);
            assert_eq!(a.2, b.2);
            assert_eq!(a.3.to_bits(), b.3.to_bits(), "round-trip not bit-exact");
        }

        // wrong dimension for declared algebra -> Format
        let text = std::fs::read_to_string(&path).unwrap();
        let bad = text.replacen("g2 14", "g2 15", 1);
        let bad_path = dir.path().join("bad.tensor");
        std::fs::write(&bad_path, bad).unwrap();
        assert!(matches!(
            load_tensor::<f64>(&bad_path),
            Err(Error::Format(_))
        ));

        // truncated file -> Checksum
        let mut lines: Vec<&str> = text.lines().collect();
        lines.truncate(lines.len() - 3);
        let trunc = lines.join("\n");
        let trunc_path = dir.path().join("trunc.tensor");
        std::fs::write(&trunc_path, trunc).unwrap();
        assert!(matches!(
            load_tensor::<f64>(&trunc_path),
            Err(Error::Checksum { .. })
        ));
    }
}
