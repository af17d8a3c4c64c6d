//! Windowed cocycle and coboundary spaces for `H^q_{(d)}`.
//!
//! Coordinates are the coefficients of degree-`d` q-cochains on keys with
//! `|index| <= N`.
//!
//! * `Z_N` is the projection onto these coordinates of the cochains on the
//!   larger window `K = N + margin` that satisfy every admissible condition
//!   row at `K`. A condition row is admissible when every key it references
//!   lies inside the window.
//! * `B_N` is spanned by the coboundaries of basis (q-1)-cochains supported
//!   in `|index| <= M`, restricted to the window-`N` coordinates.
//!
//! Both spaces are windowed estimates; [`stabilization_scan`] reports how
//! the dimensions behave as the window grows.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, ModuleTag};
use crate::cochains::{admissible_tuples, expand_coboundary, CochainKey, CochainShape, Component};
use crate::error::Error;
use crate::linsolve::{self, RationalSparseMatrix, SparseVector};
use num_traits::Zero;

use crate::scalar::Scalar;
use crate::Rational;

/// Smallest condition-window margin used by default.
pub const MIN_MARGIN: u32 = 3;

/// Default margin: `max(3, N - 3)`, i.e. condition rows on window
/// `max(N + 3, 2N - 3)`. Narrower margins leave spurious elements in the
/// projected `Z_N` of the adjoint module at `q = 3` (e.g. two extra
/// dimensions for `W` at `N = 7` with margin 3 and at `N = 9` with margin 5).
pub fn default_margin(n: u32) -> u32 {
    MIN_MARGIN.max(n.saturating_sub(3))
}

pub const ESTIMATE_LABEL: &str = "windowed estimate";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WindowConfig {
    /// Coefficient window.
    pub n: u32,
    /// Source window for coboundary generators.
    pub m: u32,
    /// `Z_N` is computed from condition rows on window `n + margin`.
    pub margin: u32,
}

impl WindowConfig {
    pub fn new(n: u32, m: u32) -> Result<Self, Error> {
        Self::with_margin(n, m, default_margin(n))
    }

    pub fn with_margin(n: u32, m: u32, margin: u32) -> Result<Self, Error> {
        if n < 1 || m < n {
            return Err(Error::InvalidWindow(format!("need 1 <= N <= M, got N={n}, M={m}")));
        }
        Ok(WindowConfig { n, m, margin })
    }

    /// `M = 2N`: every key a window-`N` coboundary row can reach.
    pub fn default_for(n: u32) -> Result<Self, Error> {
        Self::new(n, 2 * n)
    }

    pub fn condition_window(&self) -> u32 {
        self.n + self.margin
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CohomologySetup {
    pub algebra: Algebra,
    pub module: ModuleTag,
    pub q: usize,
    pub d: i64,
    pub window: WindowConfig,
}

impl CohomologySetup {
    pub fn new(algebra: Algebra, module: ModuleTag, q: usize, d: i64, window: WindowConfig) -> Result<Self, Error> {
        if q > 3 {
            return Err(Error::ArityTooLarge(q));
        }
        Ok(CohomologySetup { algebra, module, q, d, window })
    }

    pub fn shape(&self) -> CochainShape {
        CochainShape { algebra: self.algebra, module: self.module, arity: self.q, degree: self.d }
    }

    pub fn with_window(&self, window: WindowConfig) -> Self {
        CohomologySetup { window, ..*self }
    }
}

/// Coordinates of one window with a reverse index.
struct Columns {
    list: Vec<(CochainKey, Component)>,
    index: HashMap<(CochainKey, Component), usize>,
}

impl Columns {
    fn new(shape: &CochainShape, window: u32) -> Self {
        let list = shape.coordinates(window);
        let index = list.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        Columns { list, index }
    }
}

fn condition_rows(shape: &CochainShape, columns: &Columns, window: u32) -> Vec<Vec<(usize, Rational)>> {
    let tuples = admissible_tuples(shape, window);
    let per_tuple: Vec<Vec<Vec<(usize, Rational)>>> = tuples
        .par_iter()
        .map(|t| {
            let mut main = Vec::new();
            let mut central = Vec::new();
            expand_coboundary::<Rational>(shape, &t.generators(), &mut |term| {
                let col = columns.index[&(term.key, term.input)];
                match term.output {
                    Component::Main => main.push((col, term.factor)),
                    Component::Central => central.push((col, term.factor)),
                }
            });
            vec![main, central]
        })
        .collect();
    per_tuple.into_iter().flatten().filter(|r| !r.is_empty()).collect()
}

fn build_matrix(n_cols: usize, rows: Vec<Vec<(usize, Rational)>>) -> RationalSparseMatrix<Rational> {
    let mut m = RationalSparseMatrix::with_cols(n_cols);
    for r in rows {
        m.push_row(r).expect("columns in range");
    }
    m
}

/// Matrix of the condition `δψ = 0` restricted to admissible tuples at the
/// coefficient window `N`; columns follow [`CochainShape::coordinates`].
/// Rows whose entries all cancel are dropped.
pub fn condition_matrix(setup: &CohomologySetup) -> RationalSparseMatrix<Rational> {
    condition_matrix_at(setup, setup.window.n)
}

/// Same as [`condition_matrix`] at an arbitrary window.
pub fn condition_matrix_at(setup: &CohomologySetup, window: u32) -> RationalSparseMatrix<Rational> {
    let shape = setup.shape();
    let columns = Columns::new(&shape, window);
    let rows = condition_rows(&shape, &columns, window);
    let m = build_matrix(columns.list.len(), rows);
    // drop rows whose terms cancelled completely
    let kept: Vec<_> = m.rows().filter(|r| !r.is_empty()).map(<[_]>::to_vec).collect();
    build_matrix(columns.list.len(), kept)
}

/// `δ` of one basis (q-1)-cochain, restricted to window coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryGenerator {
    pub source: (CochainKey, Component),
    pub vector: SparseVector<Rational>,
}

/// Coboundaries of basis (q-1)-cochains with keys in `|index| <= source`,
/// restricted to the coordinates of `window`. Zero vectors are dropped;
/// the rest come in source order.
fn generators_on(setup: &CohomologySetup, window: u32, source: u32) -> Vec<CoboundaryGenerator> {
    let shape = setup.shape();
    let Some(lower) = shape.lowered() else { return Vec::new() };
    let sources = Columns::new(&lower, source);
    let targets = shape.coordinates(window);
    // transpose of the δ_{q-1} matrix, one target column at a time
    let contributions: Vec<Vec<(usize, usize, Rational)>> = targets
        .par_iter()
        .enumerate()
        .map(|(col, (key, comp))| {
            let mut out = Vec::new();
            expand_coboundary::<Rational>(&lower, &key.generators(), &mut |term| {
                if term.output != *comp {
                    return;
                }
                if let Some(&src) = sources.index.get(&(term.key, term.input)) {
                    out.push((src, col, term.factor));
                }
            });
            out
        })
        .collect();
    let mut per_source: Vec<HashMap<usize, Rational>> = vec![HashMap::new(); sources.list.len()];
    for (src, col, v) in contributions.into_iter().flatten() {
        let slot = per_source[src].entry(col).or_insert_with(|| Rational::from_int(0));
        *slot += v;
    }
    per_source
        .into_iter()
        .zip(sources.list)
        .filter_map(|(m, source)| {
            let mut vector: Vec<_> = m.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            vector.sort_by_key(|(c, _)| *c);
            (!vector.is_empty()).then_some(CoboundaryGenerator { source, vector })
        })
        .collect()
}

/// Coefficient vectors of the coboundary generators on the window-`N`
/// coordinates (the columns of [`condition_matrix`]).
pub fn coboundary_generators(setup: &CohomologySetup) -> Vec<CoboundaryGenerator> {
    generators_on(setup, setup.window.n, setup.window.m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "M")]
    pub m: u32,
    /// Condition window used for `dimZ`.
    #[serde(rename = "K")]
    pub k: u32,
    #[serde(rename = "dimZ")]
    pub dim_z: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    #[serde(rename = "dimH")]
    pub dim_h: usize,
}

/// Computes one ladder row and checks `B ⊆ Z` on the condition window.
pub fn cohomology_dim(setup: &CohomologySetup) -> Result<DimensionRow, Error> {
    let WindowConfig { n, m, .. } = setup.window;
    let k = setup.window.condition_window();
    let shape = setup.shape();
    let wide = Columns::new(&shape, k);
    let a_k = build_matrix(wide.list.len(), condition_rows(&shape, &wide, k));
    let keep: Vec<bool> = wide.list.iter().map(|(key, _)| key.reach() <= i64::from(n)).collect();
    let dim_z = linsolve::projected_kernel_dim(&a_k, &keep)?;

    // generators on the wide coordinates: check inclusion there, then restrict
    let wide_gens = generators_on(setup, k, m);
    let a_t = a_k.transpose();
    for (g_idx, g) in wide_gens.iter().enumerate() {
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (col, v) in &g.vector {
            for (row, a) in a_t.row(*col) {
                *acc.entry(*row).or_insert_with(|| Rational::from_int(0)) += a * v;
            }
        }
        if let Some((row, _)) = acc.into_iter().filter(|(_, x)| !x.is_zero()).min_by_key(|(r, _)| *r) {
            return Err(Error::InclusionViolation { generator: g_idx, row });
        }
    }

    let narrow_index: HashMap<usize, usize> =
        keep.iter().enumerate().filter(|(_, k)| **k).enumerate().map(|(new, (old, _))| (old, new)).collect();
    let mut g_n = RationalSparseMatrix::with_cols(narrow_index.len());
    for g in &wide_gens {
        g_n.push_row(g.vector.iter().filter_map(|(c, v)| narrow_index.get(c).map(|&nc| (nc, v.clone()))))?;
    }
    let dim_b = linsolve::rank(&g_n);
    if dim_b > dim_z {
        return Err(Error::DimensionMismatch(format!("dim B = {dim_b} exceeds dim Z = {dim_z} at N={n}, M={m}")));
    }
    Ok(DimensionRow { n, m, k, dim_z, dim_b, dim_h: dim_z - dim_b })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub algebra: Algebra,
    pub module: ModuleTag,
    pub q: usize,
    pub d: i64,
    pub ladder: Vec<DimensionRow>,
    pub stabilized: bool,
    pub stable_dim: Option<usize>,
    pub label: &'static str,
}

/// Number of trailing rungs that must agree for a stabilization verdict.
pub const STABLE_RUNGS: usize = 3;

/// Runs [`cohomology_dim`] on every rung (in parallel) and checks whether the
/// last [`STABLE_RUNGS`] values of `dimH` agree.
pub fn stabilization_scan(template: &CohomologySetup, ladder: &[WindowConfig]) -> Result<CohomologyReport, Error> {
    if ladder.windows(2).any(|w| w[1].n <= w[0].n) {
        return Err(Error::InvalidWindow("ladder must be strictly increasing in N".into()));
    }
    let rows = ladder.par_iter().map(|w| cohomology_dim(&template.with_window(*w))).collect::<Result<Vec<_>, _>>()?;
    let tail = rows.len().checked_sub(STABLE_RUNGS).map(|start| &rows[start..]);
    let stable_dim = tail.and_then(|t| t.iter().all(|r| r.dim_h == t[0].dim_h).then_some(t[0].dim_h));
    Ok(CohomologyReport {
        algebra: template.algebra,
        module: template.module,
        q: template.q,
        d: template.d,
        ladder: rows,
        stabilized: stable_dim.is_some(),
        stable_dim,
        label: ESTIMATE_LABEL,
    })
}

/// `N = lo..=hi` with default `M = 2N` and the default margin.
pub fn default_ladder(lo: u32, hi: u32) -> Result<Vec<WindowConfig>, Error> {
    (lo..=hi).map(WindowConfig::default_for).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub name: String,
    pub left: CohomologyReport,
    pub right: CohomologyReport,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub comparisons: Vec<Comparison>,
    pub all_agree: bool,
}

/// Runs one stabilization scan; lets callers reuse earlier results.
pub type ScanFn<'a> = dyn Fn(&CohomologySetup, &[WindowConfig]) -> Result<CohomologyReport, Error> + Sync + 'a;

/// Dimension comparisons implied by the Hochschild–Serre analysis:
/// `H³(V,K)` against `H³(V,V)`, and `H^k(V,W)` against `H^k(W,W)` for
/// `k = 1, 2, 3`. Both sides must be stabilized and equal.
pub fn crosscheck_sequences(ladder: &[WindowConfig]) -> Result<CrosscheckReport, Error> {
    crosscheck_with(ladder, &stabilization_scan)
}

/// [`crosscheck_sequences`] with a caller-supplied scan.
pub fn crosscheck_with(ladder: &[WindowConfig], scan: &ScanFn<'_>) -> Result<CrosscheckReport, Error> {
    let first = *ladder.first().ok_or_else(|| Error::InvalidWindow("empty ladder".into()))?;
    let setup = |a, m, q| CohomologySetup::new(a, m, q, 0, first);
    let mut pairs = vec![(
        "H3(V,K) = H3(V,V)".to_string(),
        setup(Algebra::Virasoro, ModuleTag::Trivial, 3)?,
        setup(Algebra::Virasoro, ModuleTag::Adjoint, 3)?,
    )];
    for k in 1..=3 {
        pairs.push((
            format!("H{k}(V,W) = H{k}(W,W)"),
            setup(Algebra::Virasoro, ModuleTag::ProjectedWitt, k)?,
            setup(Algebra::Witt, ModuleTag::Adjoint, k)?,
        ));
    }
    let comparisons = pairs
        .into_par_iter()
        .map(|(name, l, r)| {
            let left = scan(&l, ladder)?;
            let right = scan(&r, ladder)?;
            let agree = left.stabilized && right.stabilized && left.stable_dim == right.stable_dim;
            Ok(Comparison { name, left, right, agree })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let all_agree = comparisons.iter().all(|c| c.agree);
    Ok(CrosscheckReport { comparisons, all_agree })
}
