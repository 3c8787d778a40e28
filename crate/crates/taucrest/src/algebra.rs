//! Finite dimensional algebras presented by quivers with admissible
//! relations, and bimodules over them.
//!
//! Path convention: a path is stored in traversal order, so `arrows = [a, b]`
//! means "first a, then b". The algebra product `mult(p, q)` is "q then p"
//! (function composition), which makes representations left modules: for an
//! arrow `a: i -> j` the representation matrix maps the vertex-i component to
//! the vertex-j component and `(p*q) . x = p . (q . x)`.

use crate::exactmat::{FieldTag, Mat, Scalar};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("arrow {label}: vertex index out of range")]
    BadVertexIndex { label: String },
    #[error("duplicate arrow label {label}")]
    DuplicateLabel { label: String },
    #[error("relation term is not composable")]
    NonComposablePath,
    #[error("relation terms are not parallel paths")]
    NonParallelRelation,
    #[error("non-admissible relation: term of length < 2")]
    NonAdmissibleRelation,
    #[error("nilpotency bound must be at least 2")]
    BadNilpotencyBound,
    #[error("path space too large ({0} paths); raise relations or lower the bound")]
    PathSpaceTooLarge(usize),
    #[error("bimodule action matrices do not commute")]
    ActionsDoNotCommute,
    #[error("bimodule action is not unital")]
    ActionNotUnital,
    #[error("bimodule action does not respect the multiplication table")]
    ActionNotMultiplicative,
    #[error("bimodule action matrix has wrong shape or field")]
    BadActionMatrix,
    #[error("empty relation")]
    EmptyRelation,
}

#[derive(Clone, Debug)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize, &str)>) -> Quiver {
        Quiver {
            vertex_count,
            arrows: arrows
                .into_iter()
                .map(|(s, t, l)| Arrow {
                    source: s,
                    target: t,
                    label: l.to_string(),
                })
                .collect(),
        }
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        assert!(self.vertex_count >= 1, "quiver needs at least one vertex");
        let mut seen = HashMap::new();
        for a in &self.arrows {
            if a.source >= self.vertex_count || a.target >= self.vertex_count {
                return Err(AlgebraError::BadVertexIndex {
                    label: a.label.clone(),
                });
            }
            if seen.insert(a.label.clone(), ()).is_some() {
                return Err(AlgebraError::DuplicateLabel {
                    label: a.label.clone(),
                });
            }
        }
        Ok(())
    }
}

/// A path in traversal order; trivial paths have an empty arrow list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        if self.is_trivial() {
            format!("e{}", self.source + 1)
        } else {
            self.arrows
                .iter()
                .map(|&a| quiver.arrows[a].label.clone())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// One relation: a linear combination of parallel paths of length >= 2.
/// Each term is (coefficient, arrow index sequence in traversal order).
#[derive(Clone, Debug)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    /// All paths of length >= this bound lie in the relation ideal.
    pub nilpotency_bound: usize,
    pub field: FieldTag,
}

/// A finite dimensional algebra with a chosen path basis.
///
/// Trivial paths come first (one per vertex, so `basis[i]` is the idempotent
/// e_i for `i < vertex_count`), then surviving paths by length and then
/// lexicographically by arrow indices.
#[derive(Debug)]
pub struct Algebra {
    pub field: FieldTag,
    pub quiver: Quiver,
    pub vertex_count: usize,
    pub dim: usize,
    pub basis: Vec<Path>,
    /// `left_mult[i]` is the matrix of left multiplication by `basis[i]`.
    left_mult: Vec<Mat>,
    /// Linear combinations of arrow paths that must vanish on every
    /// representation: the presented relations plus all paths of length
    /// equal to the nilpotency bound.
    pub rep_constraints: Vec<Vec<(Scalar, Vec<usize>)>>,
    pub nilpotency_bound: usize,
    op_cache: OnceLock<Arc<Algebra>>,
}

const MAX_PATHS: usize = 200_000;

/// Builds the algebra KQ/I from an admissible presentation.
pub fn build_algebra(pres: &AlgebraPresentation) -> Result<Arc<Algebra>, AlgebraError> {
    pres.quiver.validate()?;
    if pres.nilpotency_bound < 2 {
        return Err(AlgebraError::BadNilpotencyBound);
    }
    let field = pres.field;
    let bound = pres.nilpotency_bound;
    let quiver = &pres.quiver;
    let n = quiver.vertex_count;

    // Paths of length < bound, grouped by length; lexicographic within length.
    let mut by_length: Vec<Vec<Path>> = vec![(0..n).map(Path::trivial).collect()];
    for len in 1..bound {
        let mut next = Vec::new();
        for p in &by_length[len - 1] {
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        source: p.source,
                        target: a.target,
                        arrows,
                    });
                }
            }
        }
        next.sort_by(|a, b| a.arrows.cmp(&b.arrows));
        by_length.push(next);
    }
    let all_paths: Vec<Path> = by_length.concat();
    if all_paths.len() > MAX_PATHS {
        return Err(AlgebraError::PathSpaceTooLarge(all_paths.len()));
    }
    let path_pos: HashMap<Vec<usize>, usize> = all_paths
        .iter()
        .enumerate()
        .map(|(i, p)| (path_key(p), i))
        .collect();

    // Validate relations and collect them with resolved endpoints.
    let mut rels: Vec<(usize, usize, Vec<(Scalar, Vec<usize>)>)> = Vec::new();
    for rel in &pres.relations {
        if rel.terms.is_empty() {
            return Err(AlgebraError::EmptyRelation);
        }
        let mut endpoints = None;
        for (coeff, arrows) in &rel.terms {
            if arrows.len() < 2 {
                return Err(AlgebraError::NonAdmissibleRelation);
            }
            if coeff.field() != field {
                return Err(AlgebraError::BadActionMatrix);
            }
            let (s, t) = path_endpoints(quiver, arrows).ok_or(AlgebraError::NonComposablePath)?;
            match endpoints {
                None => endpoints = Some((s, t)),
                Some(e) if e != (s, t) => return Err(AlgebraError::NonParallelRelation),
                _ => {}
            }
        }
        let (s, t) = endpoints.unwrap();
        rels.push((s, t, rel.terms.clone()));
    }

    // Generators of the ideal inside the truncated path space: w_pre . rel . w_post
    // for basis paths w_pre, w_post, traversal order w_pre ++ rel ++ w_post with
    // target(w_pre) = source(rel), target(rel) = source(w_post). Terms of length
    // >= bound are zero in the truncation and are dropped.
    let mut gen_rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for (rs, rt, terms) in &rels {
        for pre in &all_paths {
            if pre.target != *rs {
                continue;
            }
            for post_src in all_paths.iter().filter(|p| p.source == *rt) {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                for (coeff, mid) in terms {
                    let total = pre.len() + mid.len() + post_src.len();
                    if total >= bound {
                        continue;
                    }
                    let mut arrows = pre.arrows.clone();
                    arrows.extend_from_slice(mid);
                    arrows.extend_from_slice(&post_src.arrows);
                    let idx = path_pos[&key_of(&arrows, pre.source)];
                    row.push((idx, coeff.clone()));
                }
                if !row.is_empty() {
                    gen_rows.push(row);
                }
            }
        }
    }

    // Reduce: pivots of the generator span are eliminated paths.
    let mut gen_mat = Mat::zeros(field, gen_rows.len().max(1), all_paths.len());
    for (r, row) in gen_rows.iter().enumerate() {
        for (c, v) in row {
            let cur = gen_mat.get(r, *c).add(v);
            gen_mat.set(r, *c, cur);
        }
    }
    let red = gen_mat.rref();
    let pivot_of: HashMap<usize, usize> = red
        .pivot_cols
        .iter()
        .enumerate()
        .map(|(r, &c)| (c, r))
        .collect();
    let basis_cols: Vec<usize> = (0..all_paths.len())
        .filter(|c| !pivot_of.contains_key(c))
        .collect();
    let basis_pos_of_col: HashMap<usize, usize> = basis_cols
        .iter()
        .enumerate()
        .map(|(b, &c)| (c, b))
        .collect();
    let basis: Vec<Path> = basis_cols.iter().map(|&c| all_paths[c].clone()).collect();
    let dim = basis.len();

    // Expresses a full-path column in basis coordinates.
    let reduce_col = |c: usize| -> Vec<(usize, Scalar)> {
        match pivot_of.get(&c) {
            None => vec![(basis_pos_of_col[&c], Scalar::one(field))],
            Some(&r) => basis_cols
                .iter()
                .enumerate()
                .filter_map(|(b, &bc)| {
                    let v = red.matrix.get(r, bc);
                    if v.is_zero() {
                        None
                    } else {
                        Some((b, v.neg()))
                    }
                })
                .collect(),
        }
    };

    // Left multiplication matrices; column j of left_mult[i] holds the
    // coordinates of basis[i] * basis[j] ("first j, then i").
    let mut left_mult = Vec::with_capacity(dim);
    for p in &basis {
        let mut m = Mat::zeros(field, dim, dim);
        for (j, q) in basis.iter().enumerate() {
            if q.target != p.source {
                continue;
            }
            let total = p.len() + q.len();
            if total >= bound {
                continue;
            }
            let mut arrows = q.arrows.clone();
            arrows.extend_from_slice(&p.arrows);
            let col = path_pos[&key_of(&arrows, q.source)];
            for (b, v) in reduce_col(col) {
                let cur = m.get(b, j).add(&v);
                m.set(b, j, cur);
            }
        }
        left_mult.push(m);
    }

    // Constraints every representation must satisfy.
    let mut rep_constraints: Vec<Vec<(Scalar, Vec<usize>)>> =
        rels.iter().map(|(_, _, t)| t.clone()).collect();
    if bound >= 2 {
        let mut frontier: Vec<Path> = by_length.last().cloned().unwrap_or_default();
        if bound == 1 {
            frontier.clear();
        }
        for p in &frontier {
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    rep_constraints.push(vec![(Scalar::one(field), arrows)]);
                }
            }
        }
    }

    Ok(Arc::new(Algebra {
        field,
        quiver: pres.quiver.clone(),
        vertex_count: n,
        dim,
        basis,
        left_mult,
        rep_constraints,
        nilpotency_bound: bound,
        op_cache: OnceLock::new(),
    }))
}

fn path_key(p: &Path) -> Vec<usize> {
    key_of(&p.arrows, p.source)
}

fn key_of(arrows: &[usize], source: usize) -> Vec<usize> {
    if arrows.is_empty() {
        // Trivial paths need the vertex to disambiguate.
        vec![usize::MAX, source]
    } else {
        arrows.to_vec()
    }
}

fn path_endpoints(quiver: &Quiver, arrows: &[usize]) -> Option<(usize, usize)> {
    let first = quiver.arrows.get(*arrows.first()?)?;
    let mut at = first.target;
    for &a in &arrows[1..] {
        let arr = quiver.arrows.get(a)?;
        if arr.source != at {
            return None;
        }
        at = arr.target;
    }
    Some((first.source, at))
}

impl Algebra {
    /// Coordinates of basis[i] * basis[j].
    pub fn mult(&self, i: usize, j: usize) -> Mat {
        self.left_mult[i].column(j)
    }

    pub fn left_mult_mat(&self, i: usize) -> &Mat {
        &self.left_mult[i]
    }

    /// Matrix of right multiplication by basis[j] (x -> x * basis[j]).
    pub fn right_mult_mat(&self, j: usize) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let col = self.mult(i, j);
            for b in 0..self.dim {
                m.set(b, i, col.get(b, 0).clone());
            }
        }
        m
    }

    /// Product of two algebra elements in basis coordinates.
    pub fn mult_elems(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.rows(), self.dim);
        assert_eq!(b.rows(), self.dim);
        let mut out = Mat::zeros(self.field, self.dim, 1);
        for i in 0..self.dim {
            let ca = a.get(i, 0);
            if ca.is_zero() {
                continue;
            }
            out = out.add(&self.left_mult[i].matmul(b).scale(ca));
        }
        out
    }

    /// The opposite algebra, with arrows reversed and the basis path at each
    /// index reversed, so index k in A corresponds to index k in A^op.
    pub fn op(self: &Arc<Self>) -> Arc<Algebra> {
        self.op_cache
            .get_or_init(|| {
                let quiver = Quiver {
                    vertex_count: self.quiver.vertex_count,
                    arrows: self
                        .quiver
                        .arrows
                        .iter()
                        .map(|a| Arrow {
                            source: a.target,
                            target: a.source,
                            label: a.label.clone(),
                        })
                        .collect(),
                };
                let basis = self
                    .basis
                    .iter()
                    .map(|p| Path {
                        source: p.target,
                        target: p.source,
                        arrows: p.arrows.iter().rev().copied().collect(),
                    })
                    .collect::<Vec<_>>();
                // mult_op(i, j) = mult(j, i)
                let mut left_mult = Vec::with_capacity(self.dim);
                for i in 0..self.dim {
                    let mut m = Mat::zeros(self.field, self.dim, self.dim);
                    for j in 0..self.dim {
                        let col = self.mult(j, i);
                        for b in 0..self.dim {
                            m.set(b, j, col.get(b, 0).clone());
                        }
                    }
                    left_mult.push(m);
                }
                let rep_constraints = self
                    .rep_constraints
                    .iter()
                    .map(|terms| {
                        terms
                            .iter()
                            .map(|(c, arrows)| {
                                (c.clone(), arrows.iter().rev().copied().collect())
                            })
                            .collect()
                    })
                    .collect();
                Arc::new(Algebra {
                    field: self.field,
                    quiver,
                    vertex_count: self.vertex_count,
                    dim: self.dim,
                    basis,
                    left_mult,
                    rep_constraints,
                    nilpotency_bound: self.nilpotency_bound,
                    op_cache: OnceLock::new(),
                })
            })
            .clone()
    }

    /// Exhaustive associativity check on the basis; used by tests.
    pub fn check_associative(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mult(i, j);
                for k in 0..self.dim {
                    let jk = self.mult(j, k);
                    let mut ei = Mat::zeros(self.field, self.dim, 1);
                    ei.set(i, 0, Scalar::one(self.field));
                    let mut ek = Mat::zeros(self.field, self.dim, 1);
                    ek.set(k, 0, Scalar::one(self.field));
                    let lhs = self.mult_elems(&ij, &ek);
                    let rhs = self.mult_elems(&ei, &jk);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleKind {
    Regular,
    Dual,
    /// (R dimension as algebra, S dimension) of the triangular gluing.
    Triangular(usize, usize),
    Custom,
}

/// An A-bimodule given by commuting left and right action matrices, one per
/// algebra basis element.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub dim: usize,
    pub left: Vec<Mat>,
    pub right: Vec<Mat>,
    pub kind: BimoduleKind,
    pub field: FieldTag,
}

impl Bimodule {
    pub fn new(
        algebra: &Algebra,
        left: Vec<Mat>,
        right: Vec<Mat>,
        kind: BimoduleKind,
    ) -> Result<Bimodule, AlgebraError> {
        let dim = left.first().map_or(0, Mat::rows);
        let m = Bimodule {
            dim,
            left,
            right,
            kind,
            field: algebra.field,
        };
        m.validate(algebra)?;
        Ok(m)
    }

    fn validate(&self, algebra: &Algebra) -> Result<(), AlgebraError> {
        if self.left.len() != algebra.dim || self.right.len() != algebra.dim {
            return Err(AlgebraError::BadActionMatrix);
        }
        for m in self.left.iter().chain(&self.right) {
            if m.rows() != self.dim || m.cols() != self.dim || m.field() != self.field {
                return Err(AlgebraError::BadActionMatrix);
            }
        }
        if self.dim == 0 {
            return Ok(());
        }
        // Unit acts as identity on both sides.
        let mut lsum = Mat::zeros(self.field, self.dim, self.dim);
        let mut rsum = Mat::zeros(self.field, self.dim, self.dim);
        for v in 0..algebra.vertex_count {
            lsum = lsum.add(&self.left[v]);
            rsum = rsum.add(&self.right[v]);
        }
        if !lsum.is_identity() || !rsum.is_identity() {
            return Err(AlgebraError::ActionNotUnital);
        }
        // Multiplicativity against the structure constants.
        for i in 0..algebra.dim {
            for j in 0..algebra.dim {
                let prod = algebra.mult(i, j);
                let mut lexp = Mat::zeros(self.field, self.dim, self.dim);
                let mut rexp = Mat::zeros(self.field, self.dim, self.dim);
                for b in 0..algebra.dim {
                    let c = prod.get(b, 0);
                    if c.is_zero() {
                        continue;
                    }
                    lexp = lexp.add(&self.left[b].scale(c));
                    rexp = rexp.add(&self.right[b].scale(c));
                }
                if self.left[i].matmul(&self.left[j]) != lexp {
                    return Err(AlgebraError::ActionNotMultiplicative);
                }
                if self.right[j].matmul(&self.right[i]) != rexp {
                    return Err(AlgebraError::ActionNotMultiplicative);
                }
            }
        }
        // Left and right actions commute.
        for l in &self.left {
            for r in &self.right {
                if l.matmul(r) != r.matmul(l) {
                    return Err(AlgebraError::ActionsDoNotCommute);
                }
            }
        }
        Ok(())
    }
}

/// The regular bimodule: M = A with left and right multiplication.
pub fn regular_bimodule(algebra: &Algebra) -> Bimodule {
    let left = (0..algebra.dim)
        .map(|i| algebra.left_mult_mat(i).clone())
        .collect();
    let right = (0..algebra.dim).map(|j| algebra.right_mult_mat(j)).collect();
    Bimodule::new(algebra, left, right, BimoduleKind::Regular)
        .expect("regular bimodule satisfies the axioms")
}

/// The dual bimodule D(A) with (a.f.b)(x) = f(b x a).
pub fn dual_bimodule(algebra: &Algebra) -> Bimodule {
    let left = (0..algebra.dim)
        .map(|i| algebra.right_mult_mat(i).transpose())
        .collect();
    let right = (0..algebra.dim)
        .map(|j| algebra.left_mult_mat(j).transpose())
        .collect();
    Bimodule::new(algebra, left, right, BimoduleKind::Dual)
        .expect("dual bimodule satisfies the axioms")
}

/// A product algebra R x S with bookkeeping for the two factors.
pub struct ProductAlgebra {
    pub algebra: Arc<Algebra>,
    pub r: Arc<Algebra>,
    pub s: Arc<Algebra>,
    /// Vertex count of R; S vertices are shifted by this amount.
    pub r_vertices: usize,
    /// For each product basis index: which side and the index in that side's basis.
    pub basis_side: Vec<(Side, usize)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    R,
    S,
}

/// Builds R x S as the path algebra of the disjoint union quiver.
pub fn product_algebra(
    r_pres: &AlgebraPresentation,
    s_pres: &AlgebraPresentation,
) -> Result<ProductAlgebra, AlgebraError> {
    assert_eq!(r_pres.field, s_pres.field, "mixed-field product");
    let r = build_algebra(r_pres)?;
    let s = build_algebra(s_pres)?;
    let nr = r_pres.quiver.vertex_count;
    let nra = r_pres.quiver.arrows.len();
    let mut arrows: Vec<Arrow> = r_pres
        .quiver
        .arrows
        .iter()
        .map(|a| Arrow {
            source: a.source,
            target: a.target,
            label: format!("r.{}", a.label),
        })
        .collect();
    arrows.extend(s_pres.quiver.arrows.iter().map(|a| Arrow {
        source: a.source + nr,
        target: a.target + nr,
        label: format!("s.{}", a.label),
    }));
    let quiver = Quiver {
        vertex_count: nr + s_pres.quiver.vertex_count,
        arrows,
    };
    let mut relations = r_pres.relations.clone();
    relations.extend(s_pres.relations.iter().map(|rel| Relation {
        terms: rel
            .terms
            .iter()
            .map(|(c, arrows)| (c.clone(), arrows.iter().map(|&a| a + nra).collect()))
            .collect(),
    }));
    let pres = AlgebraPresentation {
        quiver,
        relations,
        nilpotency_bound: r_pres.nilpotency_bound.max(s_pres.nilpotency_bound),
        field: r_pres.field,
    };
    let algebra = build_algebra(&pres)?;

    // Locate each product basis path in the corresponding factor basis.
    let mut basis_side = Vec::with_capacity(algebra.dim);
    for p in &algebra.basis {
        if p.source < nr {
            let orig = Path {
                source: p.source,
                target: p.target,
                arrows: p.arrows.clone(),
            };
            let idx = r
                .basis
                .iter()
                .position(|q| *q == orig)
                .expect("R-side path must survive in R");
            basis_side.push((Side::R, idx));
        } else {
            let orig = Path {
                source: p.source - nr,
                target: p.target - nr,
                arrows: p.arrows.iter().map(|&a| a - nra).collect(),
            };
            let idx = s
                .basis
                .iter()
                .position(|q| *q == orig)
                .expect("S-side path must survive in S");
            basis_side.push((Side::S, idx));
        }
    }
    Ok(ProductAlgebra {
        algebra,
        r,
        s,
        r_vertices: nr,
        basis_side,
    })
}

/// Combines an R-module and an S-module into a module over the product.
pub fn product_rep(
    product: &ProductAlgebra,
    x: &crate::repcat::Rep,
    y: &crate::repcat::Rep,
) -> Arc<crate::repcat::Rep> {
    let a = &product.algebra;
    let nr = product.r_vertices;
    let nra = product.r.quiver.arrows.len();
    let mut dims = vec![0usize; a.vertex_count];
    dims[..nr].copy_from_slice(&x.dims);
    dims[nr..].copy_from_slice(&y.dims);
    let mats = (0..a.quiver.arrows.len())
        .map(|k| {
            if k < nra {
                x.mats[k].clone()
            } else {
                y.mats[k - nra].clone()
            }
        })
        .collect();
    Arc::new(crate::repcat::Rep::new(a.clone(), dims, mats))
}

/// Splits a module over the product into its R and S components.
pub fn product_split(
    product: &ProductAlgebra,
    rep: &crate::repcat::Rep,
) -> (Arc<crate::repcat::Rep>, Arc<crate::repcat::Rep>) {
    let nr = product.r_vertices;
    let nra = product.r.quiver.arrows.len();
    let x = crate::repcat::Rep::new(
        product.r.clone(),
        rep.dims[..nr].to_vec(),
        rep.mats[..nra].to_vec(),
    );
    let y = crate::repcat::Rep::new(
        product.s.clone(),
        rep.dims[nr..].to_vec(),
        rep.mats[nra..].to_vec(),
    );
    (Arc::new(x), Arc::new(y))
}

/// Makes an S-R-bimodule into an (R x S)-bimodule: the right action factors
/// through the projection to R and the left action through the projection
/// to S. `left_s[k]` acts for S-basis element k, `right_r[k]` for R-basis k.
pub fn triangular_bimodule(
    product: &ProductAlgebra,
    left_s: Vec<Mat>,
    right_r: Vec<Mat>,
) -> Result<Bimodule, AlgebraError> {
    let a = &product.algebra;
    let dim = left_s.first().map_or(0, Mat::rows);
    let zero = Mat::zeros(a.field, dim, dim);
    let mut left = Vec::with_capacity(a.dim);
    let mut right = Vec::with_capacity(a.dim);
    for (side, idx) in &product.basis_side {
        match side {
            Side::R => {
                left.push(zero.clone());
                right.push(
                    right_r
                        .get(*idx)
                        .ok_or(AlgebraError::BadActionMatrix)?
                        .clone(),
                );
            }
            Side::S => {
                left.push(
                    left_s
                        .get(*idx)
                        .ok_or(AlgebraError::BadActionMatrix)?
                        .clone(),
                );
                right.push(zero.clone());
            }
        }
    }
    Bimodule::new(
        a,
        left,
        right,
        BimoduleKind::Triangular(product.r.dim, product.s.dim),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::FieldTag;

    pub(crate) fn a2_presentation(field: FieldTag) -> AlgebraPresentation {
        AlgebraPresentation {
            quiver: Quiver::new(2, vec![(0, 1, "a")]),
            relations: vec![],
            nilpotency_bound: 2,
            field,
        }
    }

    fn two_cycle_presentation(field: FieldTag) -> AlgebraPresentation {
        let quiver = Quiver::new(2, vec![(0, 1, "a12"), (1, 0, "a21")]);
        AlgebraPresentation {
            quiver,
            relations: vec![],
            nilpotency_bound: 3,
            field,
        }
    }

    #[test]
    fn a2_has_dim_three() {
        let a = build_algebra(&a2_presentation(FieldTag::Rationals)).unwrap();
        assert_eq!(a.dim, 3);
        assert!(a.basis[0].is_trivial() && a.basis[1].is_trivial());
        assert_eq!(a.basis[2].arrows, vec![0]);
        assert!(a.check_associative());
    }

    #[test]
    fn one_vertex_is_the_field() {
        let pres = AlgebraPresentation {
            quiver: Quiver::new(1, vec![]),
            relations: vec![],
            nilpotency_bound: 2,
            field: FieldTag::Rationals,
        };
        let a = build_algebra(&pres).unwrap();
        assert_eq!(a.dim, 1);
        assert!(a.mult(0, 0).get(0, 0).is_one());
    }

    // Independent path-enumeration oracle: composable arrow sequences of
    // length < bound, counted directly.
    fn count_paths_oracle(quiver: &Quiver, bound: usize) -> usize {
        let mut count = quiver.vertex_count;
        let mut frontier: Vec<(usize, usize)> = (0..quiver.vertex_count).map(|v| (v, v)).collect();
        for _ in 1..bound {
            let mut next = Vec::new();
            for &(s, t) in &frontier {
                for a in &quiver.arrows {
                    if a.source == t {
                        next.push((s, a.target));
                    }
                }
            }
            count += next.len();
            frontier = next;
        }
        count
    }

    #[test]
    fn two_cycle_mod_length_three_has_dim_six() {
        let pres = two_cycle_presentation(FieldTag::Prime(2));
        // Oracle first: 2 trivial + 2 length-1 + 2 length-2 paths.
        assert_eq!(count_paths_oracle(&pres.quiver, 3), 6);
        let a = build_algebra(&pres).unwrap();
        assert_eq!(a.dim, 6);
        assert!(a.check_associative());
        // Length-3 paths are recorded as representation constraints.
        assert_eq!(a.rep_constraints.len(), 2);
    }

    #[test]
    fn explicit_cube_relations_match_truncation() {
        // Same algebra presented with the length-3 paths as explicit relations.
        let quiver = Quiver::new(2, vec![(0, 1, "a12"), (1, 0, "a21")]);
        let one = Scalar::one(FieldTag::Prime(2));
        let pres = AlgebraPresentation {
            quiver,
            relations: vec![
                Relation {
                    terms: vec![(one.clone(), vec![0, 1, 0])],
                },
                Relation {
                    terms: vec![(one, vec![1, 0, 1])],
                },
            ],
            nilpotency_bound: 4,
            field: FieldTag::Prime(2),
        };
        let a = build_algebra(&pres).unwrap();
        assert_eq!(a.dim, 6);
        assert!(a.check_associative());
    }

    #[test]
    fn idempotents_are_orthogonal() {
        let a = build_algebra(&a2_presentation(FieldTag::Rationals)).unwrap();
        for i in 0..a.vertex_count {
            for j in 0..a.vertex_count {
                let prod = a.mult(i, j);
                for b in 0..a.dim {
                    let expect = if i == j && b == i { 1 } else { 0 };
                    assert_eq!(
                        *prod.get(b, 0),
                        Scalar::from_i64(a.field, expect),
                        "e{i} * e{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn non_admissible_relation_rejected() {
        let mut pres = a2_presentation(FieldTag::Rationals);
        pres.relations.push(Relation {
            terms: vec![(Scalar::one(FieldTag::Rationals), vec![0])],
        });
        assert!(matches!(
            build_algebra(&pres),
            Err(AlgebraError::NonAdmissibleRelation)
        ));
    }

    #[test]
    fn regular_and_dual_bimodules_satisfy_axioms() {
        let a = build_algebra(&a2_presentation(FieldTag::Rationals)).unwrap();
        let reg = regular_bimodule(&a);
        assert_eq!(reg.dim, 3);
        let dual = dual_bimodule(&a);
        assert_eq!(dual.dim, 3);
        // Double dual recovers the regular actions.
        for i in 0..a.dim {
            assert_eq!(dual.right[i].transpose(), reg.left[i].clone());
            assert_eq!(dual.left[i].transpose(), reg.right[i].clone());
        }
    }

    #[test]
    fn one_vertex_dual_equals_regular() {
        let pres = AlgebraPresentation {
            quiver: Quiver::new(1, vec![]),
            relations: vec![],
            nilpotency_bound: 2,
            field: FieldTag::Rationals,
        };
        let a = build_algebra(&pres).unwrap();
        let reg = regular_bimodule(&a);
        let dual = dual_bimodule(&a);
        assert_eq!(reg.left, dual.left);
        assert_eq!(reg.right, dual.right);
    }

    #[test]
    fn product_of_fields() {
        let field = FieldTag::Rationals;
        let point = AlgebraPresentation {
            quiver: Quiver::new(1, vec![]),
            relations: vec![],
            nilpotency_bound: 2,
            field,
        };
        let prod = product_algebra(&point, &point).unwrap();
        assert_eq!(prod.algebra.dim, 2);
        let m = triangular_bimodule(
            &prod,
            vec![Mat::identity(field, 1)],
            vec![Mat::identity(field, 1)],
        )
        .unwrap();
        assert_eq!(m.dim, 1);
        // Left action comes from the S factor, right action from R.
        assert!(m.left[0].is_zero());
        assert!(m.left[1].is_identity());
        assert!(m.right[0].is_identity());
        assert!(m.right[1].is_zero());
    }

    #[test]
    fn product_dim_is_sum() {
        let a2 = a2_presentation(FieldTag::Prime(2));
        let prod = product_algebra(&a2, &a2).unwrap();
        assert_eq!(prod.algebra.dim, 6);
        assert!(prod.algebra.check_associative());
    }

    #[test]
    fn opposite_algebra_is_consistent() {
        let a = build_algebra(&two_cycle_presentation(FieldTag::Prime(2))).unwrap();
        let op = a.op();
        assert!(op.check_associative());
        for i in 0..a.dim {
            for j in 0..a.dim {
                assert_eq!(op.mult(i, j), a.mult(j, i));
            }
        }
    }
}
