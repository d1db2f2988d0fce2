//! The mixed-Casimir operator on the adjoint square, its projectors, and
//! the Clebsch channel tensors of the constituents.
//!
//! The operator acts on `D x D` arrays as `L(V) = Σ_t C_t V C_t` and is
//! never materialised densely; projectors are polynomials in `L` applied
//! on demand. Channel tensors are recovered by projecting a seeded random
//! block and orthonormalizing, so any run is reproducible and every
//! identity asserted is invariant under the residual channel rotation.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::FamilyAlgebra;
use crate::formulas::Level2Constants;
use crate::report::VerificationReport;
use crate::scalar::Real;
use crate::structure::{deterministic_tuples, StructureTensor};
use crate::{Error, Result};

/// Default RNG seed for Clebsch extraction and sampled scans.
pub const DEFAULT_SEED: u64 = 248;

/// Sparse application of `L_{ij,pq} = -c_{ipk} c_{jqk}` on `D x D` arrays.
#[derive(Debug, Clone)]
pub struct LOperator<F: Real> {
    dim: usize,
    rows: Vec<Vec<(u32, u32, F)>>,
}

impl<F: Real> LOperator<F> {
    pub fn new(st: &StructureTensor<F>) -> Self {
        LOperator {
            dim: st.dim,
            rows: (0..st.dim).map(|t| st.row(t).to_vec()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `L(V) = Σ_t C_t V C_t`, O(nnz(c) · D) per application.
    pub fn apply(&self, v: &Array2<F>) -> Array2<F> {
        let d = self.dim;
        let mut out = Array2::<F>::zeros((d, d));
        let mut w = Array2::<F>::zeros((d, d));
        for row in &self.rows {
            if row.is_empty() {
                continue;
            }
            w.fill(F::zero());
            // w = C_t V
            for &(x, y, c) in row {
                let (x, y) = (x as usize, y as usize);
                for j in 0..d {
                    w[[x, j]] += c * v[[y, j]];
                }
            }
            // out += w C_t
            for &(y, j, c) in row {
                let (y, j) = (y as usize, j as usize);
                for i in 0..d {
                    out[[i, j]] += c * w[[i, y]];
                }
            }
        }
        out
    }
}

/// Symmetric part of a square array.
pub fn symmetrize<F: Real>(v: &Array2<F>) -> Array2<F> {
    let half = F::of(0.5);
    let vt = v.t().to_owned();
    (v + &vt).mapv(|x| x * half)
}

/// Antisymmetric part of a square array.
pub fn antisymmetrize<F: Real>(v: &Array2<F>) -> Array2<F> {
    let half = F::of(0.5);
    let vt = v.t().to_owned();
    (v - &vt).mapv(|x| x * half)
}

pub(crate) fn frob<F: Real>(a: &Array2<F>, b: &Array2<F>) -> F {
    a.iter().zip(b.iter()).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn max_abs<F: Real>(a: &Array2<F>) -> f64 {
    a.iter()
        .map(|x| x.to_f64().unwrap().abs())
        .fold(0.0, f64::max)
}

pub(crate) fn random_array<F: Real>(rng: &mut ChaCha8Rng, d: usize) -> Array2<F> {
    let mut v = Array2::<F>::zeros((d, d));
    for x in v.iter_mut() {
        *x = F::of(rng.gen::<f64>() * 2.0 - 1.0);
    }
    v
}

/// Projector selector on the tensor square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projector {
    /// Singlet, `(1/D) δ δ`.
    P1,
    /// Symmetric `R2` constituent.
    P2,
    /// Symmetric `R3` constituent.
    P3,
    /// Adjoint channel of the antisymmetric part.
    Pad,
    /// `X2` channel of the antisymmetric part.
    P0,
}

/// The five spectral projectors, held as polynomials in the operator.
#[derive(Debug, Clone)]
pub struct ProjectorSet<F: Real> {
    pub algebra: FamilyAlgebra,
    l: LOperator<F>,
    ell2: F,
    ell3: F,
    /// Measured traces, ordered `[P1, P2, P3, Pad, P0]`.
    pub traces: [F; 5],
    /// Measured `Tr L^r` on the full space, `r = 0..4`.
    pub l_moments: [F; 5],
}

impl<F: Real> ProjectorSet<F> {
    /// Build the projector family and measure its traces; errors with
    /// `SpectralMismatch` if any trace strays from the exact integer.
    pub fn compute(st: &StructureTensor<F>, consts: &Level2Constants) -> Result<Self> {
        let l = LOperator::new(st);
        let d = l.dim();
        let ell2 = F::of(rat_f64(&consts.ell2));
        let ell3 = F::of(rat_f64(&consts.ell3));
        let mut ps = ProjectorSet {
            algebra: st.algebra.clone(),
            l,
            ell2,
            ell3,
            traces: [F::zero(); 5],
            l_moments: [F::zero(); 5],
        };
        ps.sweep();
        let expected = [
            1.0,
            consts.d2 as f64,
            consts.d3 as f64,
            d as f64,
            consts.delta2 as f64,
        ];
        for (i, (&got, want)) in ps.traces.iter().zip(expected).enumerate() {
            let dev = (got.to_f64().unwrap() - want).abs();
            if dev > 1e-4 {
                return Err(Error::SpectralMismatch(format!(
                    "projector {i} trace {} deviates from {want} by {dev:.3e}",
                    got.to_f64().unwrap()
                )));
            }
        }
        Ok(ps)
    }

    pub fn l_operator(&self) -> &LOperator<F> {
        &self.l
    }

    /// Apply one projector to an arbitrary array (symmetry projection
    /// included).
    pub fn apply(&self, which: Projector, v: &Array2<F>) -> Array2<F> {
        let d = self.l.dim();
        let one = F::one();
        match which {
            Projector::P1 => {
                let tr: F = (0..d).map(|i| v[[i, i]]).sum();
                let mut out = Array2::<F>::zeros((d, d));
                let x = tr / F::of(d as f64);
                for i in 0..d {
                    out[[i, i]] = x;
                }
                out
            }
            Projector::P2 => {
                let s = symmetrize(v);
                let g = (self.ell2 + one) * (self.ell2 - self.ell3);
                let w = self.l.apply(&s) - &s.mapv(|x| x * self.ell3);
                let w = self.l.apply(&w) + &w;
                w.mapv(|x| x / g)
            }
            Projector::P3 => {
                let s = symmetrize(v);
                let g = (self.ell3 + one) * (self.ell3 - self.ell2);
                let w = self.l.apply(&s) - &s.mapv(|x| x * self.ell2);
                let w = self.l.apply(&w) + &w;
                w.mapv(|x| x / g)
            }
            Projector::Pad => {
                let a = antisymmetrize(v);
                self.l.apply(&a).mapv(|x| x * F::of(-2.0))
            }
            Projector::P0 => {
                let a = antisymmetrize(v);
                &a + &self.l.apply(&a).mapv(|x| x * F::of(2.0))
            }
        }
    }

    /// One pass over the normalized symmetric and antisymmetric basis
    /// computing all projector traces and the L-moments.
    fn sweep(&mut self) {
        let d = self.l.dim();
        let one = F::one();
        let g2c = (self.ell2 + one) * (self.ell2 - self.ell3);
        let g3c = (self.ell3 + one) * (self.ell3 - self.ell2);
        let per_i: Vec<[F; 10]> = (0..d)
            .into_par_iter()
            .map(|i| {
                let mut acc = [F::zero(); 10];
                let mut e = Array2::<F>::zeros((d, d));
                for j in i..d {
                    // symmetric element
                    e.fill(F::zero());
                    if i == j {
                        e[[i, i]] = one;
                    } else {
                        let x = F::of(std::f64::consts::FRAC_1_SQRT_2);
                        e[[i, j]] = x;
                        e[[j, i]] = x;
                    }
                    let le = self.l.apply(&e);
                    let lle = self.l.apply(&le);
                    let ee = frob(&e, &e);
                    let ele = frob(&e, &le);
                    let elle = frob(&e, &lle);
                    if i == j {
                        acc[0] += one / F::of(d as f64);
                    }
                    acc[1] += (elle + (one - self.ell3) * ele - self.ell3 * ee) / g2c;
                    acc[2] += (elle + (one - self.ell2) * ele - self.ell2 * ee) / g3c;
                    acc[5] += ee;
                    acc[6] += ele;
                    acc[7] += frob(&le, &le);
                    acc[8] += frob(&le, &lle);
                    acc[9] += frob(&lle, &lle);
                    if j > i {
                        // antisymmetric element
                        e.fill(F::zero());
                        let x = F::of(std::f64::consts::FRAC_1_SQRT_2);
                        e[[i, j]] = x;
                        e[[j, i]] = -x;
                        let le = self.l.apply(&e);
                        let lle = self.l.apply(&le);
                        let ee = frob(&e, &e);
                        let ele = frob(&e, &le);
                        acc[3] += F::of(-2.0) * ele;
                        acc[4] += ee + F::of(2.0) * ele;
                        acc[5] += ee;
                        acc[6] += ele;
                        acc[7] += frob(&le, &le);
                        acc[8] += frob(&le, &lle);
                        acc[9] += frob(&lle, &lle);
                    }
                }
                acc
            })
            .collect();
        let mut tot = [F::zero(); 10];
        for acc in per_i {
            for (t, a) in tot.iter_mut().zip(acc) {
                *t += a;
            }
        }
        self.traces = [tot[0], tot[1], tot[2], tot[3], tot[4]];
        self.l_moments = [tot[5], tot[6], tot[7], tot[8], tot[9]];
    }
}

/// Convert an exact rational to `f64` (used for eigenvalue inputs).
pub fn rat_f64(x: &crate::Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

/// Which constituent a Clebsch set spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClebschKind {
    R2,
    R3,
    X2,
}

impl ClebschKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClebschKind::R2 => "R2",
            ClebschKind::R3 => "R3",
            ClebschKind::X2 => "X2",
        }
    }

    pub fn symmetric(self) -> bool {
        !matches!(self, ClebschKind::X2)
    }

    pub fn projector(self) -> Projector {
        match self {
            ClebschKind::R2 => Projector::P2,
            ClebschKind::R3 => Projector::P3,
            ClebschKind::X2 => Projector::P0,
        }
    }
}

/// Orthonormal family of rank-2 tensors spanning a projector's range.
#[derive(Debug, Clone)]
pub struct ClebschSet<F: Real> {
    pub kind: ClebschKind,
    /// Extra tag for derived sets (e.g. triality blocks); empty otherwise.
    pub tag: String,
    pub dim: usize,
    /// Channel tensors `t^{(ch)}_{ij}`, each `D x D`, orthonormal under the
    /// Frobenius pairing, symmetric or antisymmetric per `kind`.
    pub channels: Vec<Array2<F>>,
}

impl<F: Real> ClebschSet<F> {
    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    /// Contract the channels against an array: `x_a = Σ_{ij} t_{ij a} v_{ij}`.
    pub fn project(&self, v: &Array2<F>) -> Vec<F> {
        self.channels.iter().map(|t| frob(t, v)).collect()
    }
}

/// Recover `rank` orthonormal channels of a projector by projecting a
/// seeded random block and orthonormalizing.
pub fn extract_clebsch<F: Real>(
    ps: &ProjectorSet<F>,
    kind: ClebschKind,
    rank: usize,
    seed: u64,
) -> Result<ClebschSet<F>> {
    let d = ps.l_operator().dim();
    if rank == 0 {
        return Ok(ClebschSet {
            kind,
            tag: String::new(),
            dim: d,
            channels: Vec::new(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ kind.as_str().len() as u64);
    let block: Vec<Array2<F>> = (0..rank).map(|_| random_array(&mut rng, d)).collect();
    let projected: Vec<Array2<F>> = block
        .into_par_iter()
        .map(|v| ps.apply(kind.projector(), &v))
        .collect();
    let mut cols: Vec<Vec<F>> = projected
        .into_iter()
        .map(|m| m.into_iter().collect())
        .collect();
    let found = crate::linalg::orthonormalize_columns(&mut cols, F::of(1e-7));
    if found != rank {
        return Err(Error::RankDeficiency {
            expected: rank,
            found,
        });
    }
    let channels = cols
        .into_iter()
        .take(rank)
        .map(|c| {
            let m = Array2::from_shape_vec((d, d), c).expect("shape");
            if kind.symmetric() {
                symmetrize(&m)
            } else {
                antisymmetrize(&m)
            }
        })
        .collect();
    Ok(ClebschSet {
        kind,
        tag: String::new(),
        dim: d,
        channels,
    })
}

/// Options for the level-2 verification scan.
#[derive(Debug, Clone)]
pub struct Level2Options {
    pub seed: u64,
    /// Index tuples per sampled identity (exhaustive when the index space
    /// is smaller).
    pub samples: usize,
    /// Random adjoint vectors for the quartic-trace checks.
    pub vectors: usize,
}

impl Default for Level2Options {
    fn default() -> Self {
        Level2Options {
            seed: DEFAULT_SEED,
            samples: 100_000,
            vectors: 20,
        }
    }
}

/// Residual tolerance for level-2 identities at a given dimension.
pub fn level2_tolerance(dim: usize) -> f64 {
    if dim <= 52 {
        1e-8
    } else {
        1e-6
    }
}

/// Bundle of the level-2 data for one algebra.
pub struct Level2Data<F: Real> {
    pub consts: Level2Constants,
    pub projectors: ProjectorSet<F>,
    pub r2: ClebschSet<F>,
    pub r3: ClebschSet<F>,
    pub x2: ClebschSet<F>,
}

impl<F: Real> Level2Data<F> {
    /// Projectors plus full channel extraction at the given seed.
    pub fn build(st: &StructureTensor<F>, seed: u64) -> Result<Self> {
        let consts = crate::formulas::level2_constants(&st.algebra);
        let projectors = ProjectorSet::compute(st, &consts)?;
        let r2 = extract_clebsch(&projectors, ClebschKind::R2, consts.d2 as usize, seed)?;
        let r3 = extract_clebsch(&projectors, ClebschKind::R3, consts.d3 as usize, seed)?;
        let x2 = extract_clebsch(&projectors, ClebschKind::X2, consts.delta2 as usize, seed)?;
        Ok(Level2Data {
            consts,
            projectors,
            r2,
            r3,
            x2,
        })
    }
}

fn four_index_tuples(d: usize, samples: usize) -> Vec<Vec<usize>> {
    if d <= 14 {
        let mut v = Vec::with_capacity(d * d * d * d);
        for i in 0..d {
            for j in 0..d {
                for p in 0..d {
                    for q in 0..d {
                        v.push(vec![i, j, p, q]);
                    }
                }
            }
        }
        v
    } else {
        deterministic_tuples(&[d, d, d, d], samples.min(20_000))
    }
}

/// Run the full level-2 identity suite.
pub fn verify_level2<F: Real>(
    st: &StructureTensor<F>,
    data: &Level2Data<F>,
    opts: &Level2Options,
) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let alg = st.algebra.name.to_string();
    let d = st.dim;
    let tol = level2_tolerance(d);
    let consts = &data.consts;
    let ps = &data.projectors;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6c32);

    // projector traces against the exact integers
    let expected = [
        1.0,
        consts.d2 as f64,
        consts.d3 as f64,
        d as f64,
        consts.delta2 as f64,
    ];
    let names = ["P1", "P2", "P3", "Pad", "P0"];
    for ((&got, want), name) in ps.traces.iter().zip(expected).zip(names) {
        rep.push(
            format!("trace-{name}"),
            "d7",
            &alg,
            (got.to_f64().unwrap() - want).abs(),
            1e-6,
            (d * d) as u64,
        );
    }

    // Tr L^r measured against the closed forms
    let df = d as f64;
    let want_l = [
        df * df,
        0.0,
        df,
        -df / 4.0,
        df * (df + 27.0) / (12.0 * (df + 2.0)),
    ];
    for (r, (&got, want)) in ps.l_moments.iter().zip(want_l).enumerate() {
        let got = got.to_f64().unwrap();
        let scale = want.abs().max(1.0);
        rep.push(
            format!("trace-L{r}"),
            if r == 4 { "ff5" } else { "x2" },
            &alg,
            (got - want).abs() / scale,
            tol.max(1e-8),
            (d * d) as u64,
        );
    }

    // eigen-equation on every extracted channel: (L - l) t = 0
    let ell2 = rat_f64(&consts.ell2);
    let ell3 = rat_f64(&consts.ell3);
    for (set, ell) in [(&data.r2, ell2), (&data.r3, ell3), (&data.x2, 0.0)] {
        if set.channel_count() == 0 {
            continue;
        }
        let worst = set
            .channels
            .par_iter()
            .map(|t| {
                let lt = ps.l_operator().apply(t);
                let r = &lt - &t.mapv(|x| x * F::of(ell));
                max_abs(&r)
            })
            .reduce(|| 0.0, f64::max);
        rep.push(
            format!("eigen-{}", set.kind.as_str()),
            "f3",
            &alg,
            worst,
            tol.max(1e-8),
            set.channel_count() as u64,
        );
    }
    // adjoint channel eigenvalue: L C_t = -1/2 C_t
    let worst_ad = (0..d)
        .into_par_iter()
        .map(|t| {
            let ct = st.c_matrix(t);
            let lt = ps.l_operator().apply(&ct);
            let r = &lt + &ct.mapv(|x| x * F::of(0.5));
            max_abs(&r)
        })
        .reduce(|| 0.0, f64::max);
    rep.push("eigen-ad", "e4", &alg, worst_ad, tol, d as u64);

    // completeness on random arrays
    let mut comp = 0.0f64;
    for _ in 0..8 {
        let v = random_array::<F>(&mut rng, d);
        let sum = ps.apply(Projector::P1, &v)
            + ps.apply(Projector::P2, &v)
            + ps.apply(Projector::P3, &v)
            + ps.apply(Projector::Pad, &v)
            + ps.apply(Projector::P0, &v);
        comp = comp.max(max_abs(&(&sum - &v)) / max_abs(&v).max(1.0));
    }
    rep.push("completeness", "d7", &alg, comp, tol.max(1e-9), 8);

    // L(L + 1/2) I_A = 0 on random antisymmetric arrays
    let mut e6r = 0.0f64;
    for _ in 0..8 {
        let v = random_array::<F>(&mut rng, d);
        let a = antisymmetrize(&v);
        let la = ps.l_operator().apply(&a);
        let w = ps.l_operator().apply(&la) + &la.mapv(|x| x * F::of(0.5));
        e6r = e6r.max(max_abs(&w) / max_abs(&a).max(1.0));
    }
    rep.push("antisym-minimal-poly", "e6", &alg, e6r, tol.max(1e-9), 8);

    channel_bilinears(&mut rep, st, data, &alg, tol);
    reconstruction_checks(&mut rep, st, data, &alg, tol, opts);
    quartic_trace_checks(&mut rep, st, consts, &alg, tol, opts);
    jj3_checks(&mut rep, st, data, &alg, tol, opts);
    vector_quartics(&mut rep, st, consts, &alg, tol, opts);

    if d <= 28 {
        dense_spectrum_oracle(&mut rep, st, consts, &alg);
    }

    rep
}

fn channel_bilinears<F: Real>(
    rep: &mut VerificationReport,
    st: &StructureTensor<F>,
    data: &Level2Data<F>,
    alg: &str,
    tol: f64,
) {
    let d = st.dim;
    for set in [&data.r2, &data.r3, &data.x2] {
        let r = set.channel_count();
        if r == 0 {
            rep.push_exact(
                format!("orthonormal-{}-empty", set.kind.as_str()),
                "gg6",
                alg,
                true,
            );
            continue;
        }
        let worst = (0..r)
            .into_par_iter()
            .map(|a| {
                let mut w = 0.0f64;
                for b in a..r {
                    let g = frob(&set.channels[a], &set.channels[b]).to_f64().unwrap();
                    let want = if a == b { 1.0 } else { 0.0 };
                    w = w.max((g - want).abs());
                }
                w
            })
            .reduce(|| 0.0, f64::max);
        rep.push(
            format!("orthonormal-{}", set.kind.as_str()),
            if set.kind == ClebschKind::X2 {
                "hh6"
            } else {
                "gg6"
            },
            alg,
            worst,
            tol,
            (r * r) as u64,
        );
    }
    for set in [&data.r2, &data.r3] {
        if set.channel_count() == 0 {
            continue;
        }
        let worst = set
            .channels
            .iter()
            .map(|t| {
                (0..d)
                    .map(|i| t[[i, i]])
                    .sum::<F>()
                    .to_f64()
                    .unwrap()
                    .abs()
            })
            .fold(0.0, f64::max);
        rep.push(
            format!("traceless-{}", set.kind.as_str()),
            "gg7",
            alg,
            worst,
            tol,
            set.channel_count() as u64,
        );
    }
    let mut cross = 0.0f64;
    for a in &data.r2.channels {
        for b in &data.r3.channels {
            cross = cross.max(frob(a, b).to_f64().unwrap().abs());
        }
    }
    rep.push(
        "cross-orthogonal-R2-R3",
        "gg8",
        alg,
        cross,
        tol,
        (data.r2.channel_count() * data.r3.channel_count()) as u64,
    );
    let mut corth = 0.0f64;
    for g in &data.x2.channels {
        for t in 0..d {
            let ct = st.c_matrix(t);
            corth = corth.max(frob(&ct, g).to_f64().unwrap().abs());
        }
    }
    rep.push(
        "c-orthogonal-X2",
        "hh8",
        alg,
        corth,
        tol.max(1e-9),
        (data.x2.channel_count() * d) as u64,
    );
    // contraction identities over one free index pair
    let contractions: [(&ClebschSet<F>, f64, &str); 3] = [
        (&data.r2, data.consts.d2 as f64 / d as f64, "contract-R2"),
        (&data.r3, data.consts.d3 as f64 / d as f64, "contract-R3"),
        (&data.x2, (d as f64 - 3.0) / 2.0, "contract-X2"),
    ];
    for (set, want, id) in contractions {
        if set.channel_count() == 0 {
            continue;
        }
        let mut m = Array2::<F>::zeros((d, d));
        for t in &set.channels {
            let tt = t.dot(&t.t());
            m = m + tt;
        }
        let mut worst = 0.0f64;
        for i in 0..d {
            for k in 0..d {
                let goal = if i == k { want } else { 0.0 };
                worst = worst.max((m[[i, k]].to_f64().unwrap() - goal).abs());
            }
        }
        rep.push(id, "hh8+", alg, worst / want.max(1.0), tol, (d * d) as u64);
    }
}

fn reconstruction_checks<F: Real>(
    rep: &mut VerificationReport,
    st: &StructureTensor<F>,
    data: &Level2Data<F>,
    alg: &str,
    tol: f64,
    opts: &Level2Options,
) {
    let d = st.dim;
    let tuples = four_index_tuples(d, opts.samples);

    for (set, which) in [
        (&data.r2, Projector::P2),
        (&data.r3, Projector::P3),
        (&data.x2, Projector::P0),
    ] {
        let worst: f64 = tuples
            .par_iter()
            .map(|t| {
                let (i, j, p, q) = (t[0], t[1], t[2], t[3]);
                let lhs: F = set.channels.iter().map(|c| c[[i, j]] * c[[p, q]]).sum();
                let mut e = Array2::<F>::zeros((d, d));
                e[[p, q]] = F::one();
                let pe = data.projectors.apply(which, &e);
                (lhs - pe[[i, j]]).to_f64().unwrap().abs()
            })
            .reduce(|| 0.0, f64::max);
        rep.push(
            format!("reconstruction-{}", set.kind.as_str()),
            if set.kind.symmetric() { "hh2" } else { "hh5" },
            alg,
            worst,
            tol,
            tuples.len() as u64,
        );
    }

    // adjoint-channel matrix elements: (Pad)_{ij,kl} = c_{ijt} c_{klt}
    let cmats = st.c_matrices();
    let worst: f64 = tuples
        .par_iter()
        .map(|t| {
            let (i, j, p, q) = (t[0], t[1], t[2], t[3]);
            let lhs: F = (0..d).map(|k| cmats[k][[i, j]] * cmats[k][[p, q]]).sum();
            let mut e = Array2::<F>::zeros((d, d));
            e[[p, q]] = F::one();
            let pe = data.projectors.apply(Projector::Pad, &e);
            (lhs - pe[[i, j]]).to_f64().unwrap().abs()
        })
        .reduce(|| 0.0, f64::max);
    rep.push(
        "adjoint-channel-elements",
        "hh5",
        alg,
        worst,
        tol,
        tuples.len() as u64,
    );

    // antisymmetric split: A = Σ_t ψ_t C_t + P0 A
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6834);
    let mut worst = 0.0f64;
    for _ in 0..6 {
        let v = random_array::<F>(&mut rng, d);
        let a = antisymmetrize(&v);
        let x_part = data.projectors.apply(Projector::P0, &a);
        let mut recon = x_part.clone();
        for t in 0..d {
            let ct = st.c_matrix(t);
            let psi = frob(&ct, &a);
            recon = recon + ct.mapv(|x| x * psi);
        }
        worst = worst.max(max_abs(&(&recon - &a)) / max_abs(&a).max(1.0));
    }
    rep.push("antisym-split", "hh7", alg, worst, tol, 6);
}

fn quartic_trace_checks<F: Real>(
    rep: &mut VerificationReport,
    st: &StructureTensor<F>,
    consts: &Level2Constants,
    alg: &str,
    tol: f64,
    opts: &Level2Options,
) {
    let d = st.dim;
    let ell2 = rat_f64(&consts.ell2);
    let ell3 = rat_f64(&consts.ell3);
    let cmats = st.c_matrices();
    let tuples = four_index_tuples(d, opts.samples);
    let x = ell2 * ell3;
    let worst: f64 = tuples
        .par_iter()
        .map(|t| {
            let (i, j, p, q) = (t[0], t[1], t[2], t[3]);
            let m = cmats[i].dot(&cmats[p]).dot(&cmats[q]).dot(&cmats[j]);
            let lhs: f64 = (0..d).map(|z| m[[z, z]].to_f64().unwrap()).sum();
            let cc1: f64 = (0..d)
                .map(|l| (cmats[l][[i, p]] * cmats[l][[j, q]]).to_f64().unwrap())
                .sum();
            let cc2: f64 = (0..d)
                .map(|l| (cmats[l][[i, q]] * cmats[l][[p, j]]).to_f64().unwrap())
                .sum();
            let del = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
            let rhs = cc1 / 3.0 + cc2 / 6.0
                - 0.5 * x * (del(i, p) * del(j, q) + del(i, q) * del(j, p))
                + (5.0 + 6.0 * x) / (6.0 * d as f64) * del(i, j) * del(p, q);
            (lhs - rhs).abs()
        })
        .reduce(|| 0.0, f64::max);
    rep.push("quartic-trace", "f7", alg, worst, tol, tuples.len() as u64);
}

fn jj3_checks<F: Real>(
    rep: &mut VerificationReport,
    st: &StructureTensor<F>,
    data: &Level2Data<F>,
    alg: &str,
    tol: f64,
    opts: &Level2Options,
) {
    let d = st.dim;
    let ell2 = rat_f64(&data.consts.ell2);
    let ell3 = rat_f64(&data.consts.ell3);
    let cmats = st.c_matrices();
    let tuples = four_index_tuples(d, opts.samples);
    let del = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    for (set, ell, partner, id) in [
        (&data.r2, ell2, ell3, "dd-closed-form-R2"),
        (&data.r3, ell3, ell2, "dd-closed-form-R3"),
    ] {
        if set.channel_count() == 0 {
            continue;
        }
        let worst: f64 = tuples
            .par_iter()
            .map(|t| {
                let (i, j, p, q) = (t[0], t[1], t[2], t[3]);
                let lhs: f64 = set
                    .channels
                    .iter()
                    .map(|c| (c[[i, j]] * c[[p, q]]).to_f64().unwrap())
                    .sum();
                let cc1: f64 = (0..d)
                    .map(|z| (cmats[z][[i, p]] * cmats[z][[j, q]]).to_f64().unwrap())
                    .sum();
                let cc2: f64 = (0..d)
                    .map(|z| (cmats[z][[i, q]] * cmats[z][[j, p]]).to_f64().unwrap())
                    .sum();
                let rhs = (-0.5 * (cc1 + cc2)
                    - 0.5 * partner * (del(i, p) * del(j, q) + del(i, q) * del(j, p))
                    + (1.0 + partner) / d as f64 * del(i, j) * del(p, q))
                    / (ell - partner);
                (lhs - rhs).abs()
            })
            .reduce(|| 0.0, f64::max);
        rep.push(id, "jj3", alg, worst, tol, tuples.len() as u64);
    }
}

fn vector_quartics<F: Real>(
    rep: &mut VerificationReport,
    st: &StructureTensor<F>,
    consts: &Level2Constants,
    alg: &str,
    tol: f64,
    opts: &Level2Options,
) {
    let d = st.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6a31);
    let want_g40 = 5.0 / (2.0 * (d as f64 + 2.0));
    let want_jj4 = 2.0 * consts.d2 as f64 / (d as f64 * (d as f64 + 2.0));
    let l = LOperator::new(st);
    let ell2 = rat_f64(&consts.ell2);
    let ell3 = rat_f64(&consts.ell3);
    let mut worst_g40 = 0.0f64;
    let mut worst_jj4 = 0.0f64;
    for _ in 0..opts.vectors {
        let v: Vec<F> = (0..d)
            .map(|_| F::of(rng.gen::<f64>() * 2.0 - 1.0))
            .collect();
        let av = st.contract_vector(&v);
        let a2 = av.dot(&av);
        let tr4: f64 = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (a2[[i, j]] * a2[[j, i]]).to_f64().unwrap())
                    .sum::<f64>()
            })
            .sum();
        let vv: f64 = v.iter().map(|x| x.to_f64().unwrap().powi(2)).sum();
        worst_g40 = worst_g40.max((tr4 / (vv * vv) - want_g40).abs() / want_g40);
        if consts.d2 > 0 {
            // x·x = <v v^T, P2 (v v^T)>
            let mut vvt = Array2::<F>::zeros((d, d));
            for i in 0..d {
                for j in 0..d {
                    vvt[[i, j]] = v[i] * v[j];
                }
            }
            let g = (ell2 + 1.0) * (ell2 - ell3);
            let w = l.apply(&vvt) - &vvt.mapv(|x| x * F::of(ell3));
            let w = l.apply(&w) + &w;
            let p2v = w.mapv(|x| x / F::of(g));
            let xx = frob(&vvt, &p2v).to_f64().unwrap();
            worst_jj4 = worst_jj4.max((xx / (vv * vv) - want_jj4).abs() / want_jj4);
        }
    }
    rep.push(
        "symmetrized-quartic-trace",
        "g40",
        alg,
        worst_g40,
        tol.max(1e-8),
        opts.vectors as u64,
    );
    if consts.d2 > 0 {
        rep.push(
            "dd-symmetrized",
            "jj4",
            alg,
            worst_jj4,
            tol.max(1e-8),
            opts.vectors as u64,
        );
    }
}

fn dense_spectrum_oracle<F: Real>(
    rep: &mut VerificationReport,
    st: &StructureTensor<F>,
    consts: &Level2Constants,
    alg: &str,
) {
    // materialize L on the symmetric subspace and diagonalize; the
    // multiplicity pattern must be {1, D2, D3} at {-1, l2, l3}
    let d = st.dim;
    let l = LOperator::new(st);
    let nsym = d * (d + 1) / 2;
    let mut basis = Vec::with_capacity(nsym);
    for i in 0..d {
        for j in i..d {
            basis.push((i, j));
        }
    }
    let mut m = Array2::<F>::zeros((nsym, nsym));
    for (col, &(p, q)) in basis.iter().enumerate() {
        let mut e = Array2::<F>::zeros((d, d));
        if p == q {
            e[[p, p]] = F::one();
        } else {
            let x = F::of(std::f64::consts::FRAC_1_SQRT_2);
            e[[p, q]] = x;
            e[[q, p]] = x;
        }
        let le = l.apply(&e);
        for (row, &(i, j)) in basis.iter().enumerate() {
            let x = if i == j {
                le[[i, i]]
            } else {
                F::of(std::f64::consts::SQRT_2) * le[[i, j]]
            };
            m[[row, col]] = x;
        }
    }
    let (vals, _) = crate::linalg::sym_eigen(&m);
    let ell2 = rat_f64(&consts.ell2);
    let ell3 = rat_f64(&consts.ell3);
    let mut counts = [0usize; 3];
    let mut worst = 0.0f64;
    for &v in vals.iter() {
        let v = v.to_f64().unwrap();
        let dists = [(v + 1.0).abs(), (v - ell2).abs(), (v - ell3).abs()];
        let (k, &dmin) = dists
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        counts[k] += 1;
        worst = worst.max(dmin);
    }
    let ok = counts == [1, consts.d2 as usize, consts.d3 as usize];
    rep.push_exact("dense-spectrum-multiplicities", "g1", alg, ok);
    rep.push("dense-spectrum-values", "g1", alg, worst, 1e-8, nsym as u64);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::AlgebraName::*;

    fn data_for(name: crate::AlgebraName) -> (StructureTensor<f64>, Level2Data<f64>) {
        let st = StructureTensor::<f64>::build(name).unwrap();
        let data = Level2Data::build(&st, DEFAULT_SEED).unwrap();
        (st, data)
    }

    #[test]
    fn g2_projector_traces() {
        let (_, data) = data_for(G2);
        let tr = data.projectors.traces;
        assert!((tr[1] - 27.0).abs() < 1e-8);
        assert!((tr[2] - 77.0).abs() < 1e-8);
        assert!((tr[4] - 77.0).abs() < 1e-8);
    }

    #[test]
    fn a2_projector_traces() {
        let (_, data) = data_for(A2);
        let tr = data.projectors.traces;
        assert!(
            (tr[1] - 8.0).abs() < 1e-8,
            "R2 slot coincides with the adjoint"
        );
        assert!((tr[4] - 20.0).abs() < 1e-8);
    }

    #[test]
    fn a1_has_empty_r2_and_x2() {
        let (_, data) = data_for(A1);
        assert_eq!(data.r2.channel_count(), 0);
        assert_eq!(data.x2.channel_count(), 0);
        assert_eq!(data.r3.channel_count(), 5);
    }

    #[test]
    fn g2_full_suite_passes() {
        let (st, data) = data_for(G2);
        let rep = verify_level2(&st, &data, &Level2Options::default());
        let fails: Vec<_> = rep.failures().collect();
        assert!(fails.is_empty(), "failures: {fails:?}");
    }

    #[test]
    fn a1_and_a2_suites_pass() {
        for name in [A1, A2] {
            let (st, data) = data_for(name);
            let rep = verify_level2(&st, &data, &Level2Options::default());
            let fails: Vec<_> = rep.failures().collect();
            assert!(fails.is_empty(), "{name} failures: {fails:?}");
        }
    }

    #[test]
    fn d4_projector_traces_fill_the_reducible_slot() {
        let (_, data) = data_for(D4);
        assert!((data.projectors.traces[1] - 105.0).abs() < 1e-7);
        assert!((data.projectors.traces[2] - 300.0).abs() < 1e-7);
    }

    #[test]
    fn clebsch_gauge_depends_on_seed_but_identities_hold() {
        let st = StructureTensor::<f64>::build(A2).unwrap();
        let a = Level2Data::build(&st, 1).unwrap();
        let b = Level2Data::build(&st, 2).unwrap();
        let diff = (&a.r2.channels[0] - &b.r2.channels[0])
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max);
        assert!(diff > 1e-6, "distinct seeds should rotate the gauge");
        for data in [&a, &b] {
            let rep = verify_level2(&st, data, &Level2Options::default());
            assert!(rep.all_passed());
        }
    }
}
