//! Finite dimensional left modules over a quiver algebra, presented as
//! quiver representations, together with the constructive category
//! operations: hom spaces, kernels, cokernels, radicals, projective covers
//! and minimal projective presentations.

use crate::algebra::{Algebra, Path};
use crate::exactmat::{Mat, Scalar};
use std::sync::Arc;

/// A representation: one vector space dimension per vertex and one matrix
/// per arrow. For an arrow a: i -> j the matrix has shape dims[j] x dims[i].
#[derive(Clone, Debug)]
pub struct Rep {
    pub algebra: Arc<Algebra>,
    pub dims: Vec<usize>,
    pub mats: Vec<Mat>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.mats == other.mats
    }
}

impl Rep {
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, mats: Vec<Mat>) -> Rep {
        let rep = Rep { algebra, dims, mats };
        rep.assert_valid();
        rep
    }

    pub fn zero(algebra: Arc<Algebra>) -> Rep {
        let n = algebra.vertex_count;
        let field = algebra.field;
        let mats = algebra
            .quiver
            .arrows
            .iter()
            .map(|_| Mat::zeros(field, 0, 0))
            .collect();
        Rep {
            algebra,
            dims: vec![0; n],
            mats,
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Starting offset of each vertex block in the concatenated total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len() + 1);
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out.push(acc);
        out
    }

    fn assert_valid(&self) {
        assert_eq!(self.dims.len(), self.algebra.vertex_count);
        assert_eq!(self.mats.len(), self.algebra.quiver.arrows.len());
        for (k, a) in self.algebra.quiver.arrows.iter().enumerate() {
            assert_eq!(
                (self.mats[k].rows(), self.mats[k].cols()),
                (self.dims[a.target], self.dims[a.source]),
                "arrow {} matrix shape",
                a.label
            );
            assert_eq!(self.mats[k].field(), self.algebra.field);
        }
        assert!(
            self.satisfies_relations(),
            "representation violates the algebra relations"
        );
    }

    /// The matrix of a path acting on this representation
    /// (arrows in traversal order: first arrow applied first).
    pub fn path_matrix(&self, arrows: &[usize]) -> Mat {
        assert!(!arrows.is_empty());
        let mut m = self.mats[arrows[0]].clone();
        for &a in &arrows[1..] {
            m = self.mats[a].matmul(&m);
        }
        m
    }

    /// Checks the presented relations and the nilpotency constraints.
    pub fn satisfies_relations(&self) -> bool {
        for terms in &self.algebra.rep_constraints {
            let arrows0 = &terms[0].1;
            let src = self.algebra.quiver.arrows[arrows0[0]].source;
            let tgt = self.algebra.quiver.arrows[*arrows0.last().unwrap()].target;
            let mut sum = Mat::zeros(self.algebra.field, self.dims[tgt], self.dims[src]);
            for (coeff, arrows) in terms {
                sum = sum.add(&self.path_matrix(arrows).scale(coeff));
            }
            if !sum.is_zero() {
                return false;
            }
        }
        true
    }

    /// Action of an algebra basis element on the concatenated total space.
    pub fn act(&self, basis_index: usize) -> Mat {
        let n = self.total_dim();
        let off = self.offsets();
        let mut m = Mat::zeros(self.algebra.field, n, n);
        let p = &self.algebra.basis[basis_index];
        if p.is_trivial() {
            let v = p.source;
            m.paste(off[v], off[v], &Mat::identity(self.algebra.field, self.dims[v]).clone());
        } else {
            m.paste(off[p.target], off[p.source], &self.path_matrix(&p.arrows));
        }
        m
    }

    /// Action of a general algebra element given by basis coordinates.
    pub fn act_elem(&self, coords: &Mat) -> Mat {
        assert_eq!(coords.rows(), self.algebra.dim);
        let n = self.total_dim();
        let mut m = Mat::zeros(self.algebra.field, n, n);
        for b in 0..self.algebra.dim {
            let c = coords.get(b, 0);
            if !c.is_zero() {
                m = m.add(&self.act(b).scale(c));
            }
        }
        m
    }

    /// Stable identifier used for cache keys and deterministic ordering.
    pub fn canonical_string(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("{:?}|", self.dims));
        for m in &self.mats {
            s.push_str(&m.canonical_string());
            s.push(';');
        }
        s
    }
}

impl crate::fitting::ModuleLike for Arc<Rep> {
    fn dim(&self) -> usize {
        self.total_dim()
    }

    fn field(&self) -> crate::exactmat::FieldTag {
        self.algebra.field
    }

    fn endo_mats(&self) -> Vec<Mat> {
        hom_basis(self, self).iter().map(RepMap::total_mat).collect()
    }

    fn hom_mats(&self, other: &Self) -> Vec<Mat> {
        hom_basis(self, other).iter().map(RepMap::total_mat).collect()
    }

    fn restrict(&self, cols: &Mat) -> Self {
        let field = self.algebra.field;
        let off = self.offsets();
        // Split the invariant subspace by vertex block; invariance under the
        // idempotents makes this a direct sum decomposition of the span.
        let incls: Vec<Mat> = (0..self.dims.len())
            .map(|v| {
                cols.submatrix(off[v], 0, self.dims[v], cols.cols())
                    .column_space_basis()
            })
            .collect();
        let dims: Vec<usize> = incls.iter().map(Mat::cols).collect();
        assert_eq!(
            dims.iter().sum::<usize>(),
            cols.rank(),
            "subspace must be idempotent-invariant"
        );
        let mats: Vec<Mat> = self
            .algebra
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                if dims[a.target] == 0 {
                    Mat::zeros(field, 0, dims[a.source])
                } else {
                    incls[a.target]
                        .solve(&self.mats[k].matmul(&incls[a.source]))
                        .expect("span must be invariant under the arrows")
                }
            })
            .collect();
        Arc::new(Rep::new(self.algebra.clone(), dims, mats))
    }

    fn sort_key(&self) -> (usize, String) {
        (self.total_dim(), self.canonical_string())
    }
}

/// A morphism of representations: one block per vertex,
/// shape codomain.dims[v] x domain.dims[v].
#[derive(Clone, Debug)]
pub struct RepMap {
    pub domain: Arc<Rep>,
    pub codomain: Arc<Rep>,
    pub blocks: Vec<Mat>,
}

impl RepMap {
    pub fn new(domain: Arc<Rep>, codomain: Arc<Rep>, blocks: Vec<Mat>) -> RepMap {
        let f = RepMap {
            domain,
            codomain,
            blocks,
        };
        assert!(f.is_valid(), "blocks do not intertwine the arrow actions");
        f
    }

    pub fn zero(domain: Arc<Rep>, codomain: Arc<Rep>) -> RepMap {
        let field = domain.algebra.field;
        let blocks = domain
            .dims
            .iter()
            .zip(&codomain.dims)
            .map(|(&d, &c)| Mat::zeros(field, c, d))
            .collect();
        RepMap {
            domain,
            codomain,
            blocks,
        }
    }

    pub fn identity(rep: &Arc<Rep>) -> RepMap {
        let blocks = rep
            .dims
            .iter()
            .map(|&d| Mat::identity(rep.algebra.field, d))
            .collect();
        RepMap {
            domain: rep.clone(),
            codomain: rep.clone(),
            blocks,
        }
    }

    pub fn is_valid(&self) -> bool {
        if self.blocks.len() != self.domain.dims.len() {
            return false;
        }
        for (v, b) in self.blocks.iter().enumerate() {
            if (b.rows(), b.cols()) != (self.codomain.dims[v], self.domain.dims[v]) {
                return false;
            }
        }
        for (k, a) in self.domain.algebra.quiver.arrows.iter().enumerate() {
            let lhs = self.blocks[a.target].matmul(&self.domain.mats[k]);
            let rhs = self.codomain.mats[k].matmul(&self.blocks[a.source]);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    /// self after other: (self . other)(x) = self(other(x)).
    pub fn compose(&self, other: &RepMap) -> RepMap {
        assert_eq!(other.codomain.dims, self.domain.dims);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.matmul(b))
            .collect();
        RepMap {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            blocks,
        }
    }

    pub fn add(&self, other: &RepMap) -> RepMap {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect();
        RepMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks,
        }
    }

    pub fn scale(&self, c: &Scalar) -> RepMap {
        RepMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    /// Block diagonal matrix on the concatenated total spaces.
    pub fn total_mat(&self) -> Mat {
        let field = self.domain.algebra.field;
        let mut m = Mat::zeros(field, self.codomain.total_dim(), self.domain.total_dim());
        let doff = self.domain.offsets();
        let coff = self.codomain.offsets();
        for (v, b) in self.blocks.iter().enumerate() {
            m.paste(coff[v], doff[v], b);
        }
        m
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.nullity() == 0)
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(Mat::is_surjective_on_columns)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.domain.dims == self.codomain.dims && self.is_injective()
    }
}

/// A basis of Hom(x, y), computed from the intertwining equations.
/// Deterministic: depends only on the matrices of x and y.
pub fn hom_basis(x: &Arc<Rep>, y: &Arc<Rep>) -> Vec<RepMap> {
    let field = x.algebra.field;
    let n = x.dims.len();
    // Unknowns: row-major vec of each block f_v, concatenated by vertex.
    let var_off: Vec<usize> = {
        let mut acc = 0;
        let mut out = Vec::with_capacity(n + 1);
        for v in 0..n {
            out.push(acc);
            acc += y.dims[v] * x.dims[v];
        }
        out.push(acc);
        out
    };
    let nvars = var_off[n];
    let mut rows = 0;
    for a in &x.algebra.quiver.arrows {
        rows += y.dims[a.target] * x.dims[a.source];
    }
    let mut sys = Mat::zeros(field, rows.max(1), nvars);
    let mut r0 = 0;
    for (k, a) in x.algebra.quiver.arrows.iter().enumerate() {
        let (i, j) = (a.source, a.target);
        if y.dims[j] * x.dims[i] == 0 {
            continue;
        }
        // f_j X_a - Y_a f_i = 0; vec_r(A X B) = (A kron B^T) vec_r(X).
        let lhs = Mat::identity(field, y.dims[j]).kron(&x.mats[k].transpose());
        sys.paste(r0, var_off[j], &lhs);
        let rhs = y.mats[k].kron(&Mat::identity(field, x.dims[i]));
        let mut block = Mat::zeros(field, y.dims[j] * x.dims[i], y.dims[i] * x.dims[i]);
        block = block.sub(&rhs);
        // Accumulate in case i == j.
        let mut cur = sys.submatrix(r0, var_off[i], block.rows(), block.cols());
        cur = cur.add(&block);
        sys.paste(r0, var_off[i], &cur);
        r0 += y.dims[j] * x.dims[i];
    }
    let ker = sys.kernel_basis();
    let mut out = Vec::with_capacity(ker.cols());
    for c in 0..ker.cols() {
        let col = ker.column(c);
        let mut blocks = Vec::with_capacity(n);
        for v in 0..n {
            let seg = col.submatrix(var_off[v], 0, y.dims[v] * x.dims[v], 1);
            blocks.push(Mat::from_vec_rowmajor(&seg, y.dims[v], x.dims[v]));
        }
        out.push(RepMap {
            domain: x.clone(),
            codomain: y.clone(),
            blocks,
        });
    }
    out
}

pub fn hom_dim(x: &Arc<Rep>, y: &Arc<Rep>) -> usize {
    hom_basis(x, y).len()
}

/// Kernel with its inclusion.
pub fn kernel(f: &RepMap) -> (Arc<Rep>, RepMap) {
    let x = &f.domain;
    let field = x.algebra.field;
    let incls: Vec<Mat> = f.blocks.iter().map(Mat::kernel_basis).collect();
    let dims: Vec<usize> = incls.iter().map(Mat::cols).collect();
    let mats: Vec<Mat> = x
        .algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let rhs = x.mats[k].matmul(&incls[a.source]);
            if dims[a.target] == 0 {
                Mat::zeros(field, 0, dims[a.source])
            } else {
                incls[a.target]
                    .solve(&rhs)
                    .expect("kernel is a subrepresentation")
            }
        })
        .collect();
    let ker = Arc::new(Rep::new(x.algebra.clone(), dims, mats));
    let incl = RepMap::new(ker.clone(), x.clone(), incls);
    (ker, incl)
}

/// Cokernel with its projection and a linear section (per vertex,
/// a right inverse of the projection; not a morphism in general).
pub struct Cokernel {
    pub rep: Arc<Rep>,
    pub proj: RepMap,
    pub section: Vec<Mat>,
}

pub fn cokernel(f: &RepMap) -> Cokernel {
    let y = &f.codomain;
    let field = y.algebra.field;
    let mut projs = Vec::new();
    let mut sections = Vec::new();
    for v in 0..y.dims.len() {
        let im = f.blocks[v].column_space_basis();
        let r = im.cols();
        // Extend the image basis to a basis of the whole space by standard
        // vectors; the complement rows of the inverse give the projection.
        let mut full = im;
        let mut just_ext = Mat::zeros(field, y.dims[v], 0);
        for e in 0..y.dims[v] {
            if full.cols() == y.dims[v] {
                break;
            }
            let mut cand = Mat::zeros(field, y.dims[v], 1);
            cand.set(e, 0, Scalar::one(field));
            let trial = full.hstack(&cand);
            if trial.rank() == trial.cols() {
                full = trial;
                just_ext = just_ext.hstack(&cand);
            }
        }
        assert_eq!(full.cols(), y.dims[v]);
        let c = y.dims[v] - r;
        if y.dims[v] == 0 {
            projs.push(Mat::zeros(field, 0, 0));
            sections.push(Mat::zeros(field, 0, 0));
        } else {
            let inv = full.inverse().expect("completed to a basis");
            projs.push(inv.submatrix(r, 0, c, y.dims[v]));
            sections.push(just_ext);
        }
    }
    let dims: Vec<usize> = projs.iter().map(Mat::rows).collect();
    let mats: Vec<Mat> = y
        .algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| projs[a.target].matmul(&y.mats[k]).matmul(&sections[a.source]))
        .collect();
    let rep = Arc::new(Rep::new(y.algebra.clone(), dims, mats));
    let proj = RepMap::new(y.clone(), rep.clone(), projs);
    Cokernel {
        rep,
        proj,
        section: sections,
    }
}

/// Image of f as a subrepresentation of the codomain, with the inclusion
/// and the corestriction of f onto it.
pub fn image(f: &RepMap) -> (Arc<Rep>, RepMap, RepMap) {
    let y = &f.codomain;
    let field = y.algebra.field;
    let incls: Vec<Mat> = f.blocks.iter().map(Mat::column_space_basis).collect();
    let dims: Vec<usize> = incls.iter().map(Mat::cols).collect();
    let mats: Vec<Mat> = y
        .algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            if dims[a.target] == 0 {
                Mat::zeros(field, 0, dims[a.source])
            } else {
                incls[a.target]
                    .solve(&y.mats[k].matmul(&incls[a.source]))
                    .expect("image is a subrepresentation")
            }
        })
        .collect();
    let im = Arc::new(Rep::new(y.algebra.clone(), dims, mats));
    let corestrict: Vec<Mat> = f
        .blocks
        .iter()
        .zip(&incls)
        .map(|(b, i)| {
            if i.cols() == 0 {
                Mat::zeros(field, 0, b.cols())
            } else {
                i.solve(b).expect("blocks factor through the image")
            }
        })
        .collect();
    let incl = RepMap::new(im.clone(), y.clone(), incls);
    let epi = RepMap::new(f.domain.clone(), im.clone(), corestrict);
    (im, incl, epi)
}

/// The radical (sum of arrow images) with its inclusion.
pub fn radical(x: &Arc<Rep>) -> (Arc<Rep>, RepMap) {
    let field = x.algebra.field;
    let n = x.dims.len();
    let mut incls = Vec::with_capacity(n);
    for v in 0..n {
        let mut stacked = Mat::zeros(field, x.dims[v], 0);
        for (k, a) in x.algebra.quiver.arrows.iter().enumerate() {
            if a.target == v {
                stacked = stacked.hstack(&x.mats[k]);
            }
        }
        incls.push(stacked.column_space_basis());
    }
    let dims: Vec<usize> = incls.iter().map(Mat::cols).collect();
    let mats: Vec<Mat> = x
        .algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            if dims[a.target] == 0 {
                Mat::zeros(field, 0, dims[a.source])
            } else {
                incls[a.target]
                    .solve(&x.mats[k].matmul(&incls[a.source]))
                    .expect("radical is a subrepresentation")
            }
        })
        .collect();
    let rad = Arc::new(Rep::new(x.algebra.clone(), dims, mats));
    let incl = RepMap::new(rad.clone(), x.clone(), incls);
    (rad, incl)
}

/// The top x / rad x with the quotient map and a linear section.
pub fn top(x: &Arc<Rep>) -> Cokernel {
    let (_, incl) = radical(x);
    cokernel(&incl)
}

/// Standard modules.
pub fn simple_module(algebra: &Arc<Algebra>, v: usize) -> Arc<Rep> {
    let field = algebra.field;
    let dims: Vec<usize> = (0..algebra.vertex_count)
        .map(|u| usize::from(u == v))
        .collect();
    let mats = algebra
        .quiver
        .arrows
        .iter()
        .map(|a| Mat::zeros(field, dims[a.target], dims[a.source]))
        .collect();
    Arc::new(Rep::new(algebra.clone(), dims, mats))
}

/// An indecomposable projective P(v) together with generator bookkeeping.
#[derive(Clone, Debug)]
pub struct ProjRep {
    pub rep: Arc<Rep>,
    /// Vertex of each indecomposable summand, in order.
    pub summands: Vec<usize>,
    /// For each summand: for each algebra basis path with source at that
    /// vertex, (algebra basis index, vertex block, offset within the block).
    pub layout: Vec<Vec<(usize, usize, usize)>>,
}

impl ProjRep {
    /// Position (vertex, offset) of the generator e_v of summand k.
    pub fn generator(&self, k: usize) -> (usize, usize) {
        let v = self.summands[k];
        let (_, vertex, off) = *self.layout[k]
            .iter()
            .find(|(b, _, _)| self.rep.algebra.basis[*b] == Path::trivial(v))
            .expect("trivial path survives in the basis");
        (vertex, off)
    }
}

/// Direct sum of indecomposable projectives, one per listed vertex.
pub fn projective_rep(algebra: &Arc<Algebra>, vertices: &[usize]) -> ProjRep {
    let field = algebra.field;
    let n = algebra.vertex_count;
    // Basis paths with source v, for each summand, grouped by target vertex.
    let mut layout: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(vertices.len());
    let mut dims = vec![0usize; n];
    for &v in vertices {
        let mut entry = Vec::new();
        for (b, p) in algebra.basis.iter().enumerate() {
            if p.source == v {
                entry.push((b, p.target, dims[p.target]));
                dims[p.target] += 1;
            }
        }
        layout.push(entry);
    }
    // Position lookup: algebra basis index -> (summand, vertex, offset).
    let mut pos_of: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, entry) in layout.iter().enumerate() {
        for &(b, vert, off) in entry {
            if pos_of[vert].len() <= off {
                pos_of[vert].resize(off + 1, (usize::MAX, usize::MAX));
            }
            pos_of[vert][off] = (k, b);
        }
    }
    // Arrow action by left multiplication in the algebra.
    let arrow_basis: Vec<usize> = algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            algebra
                .basis
                .iter()
                .position(|p| p.arrows == vec![k] && p.source == a.source)
                .expect("arrows survive in an admissible quotient")
        })
        .collect();
    let mut mats: Vec<Mat> = algebra
        .quiver
        .arrows
        .iter()
        .map(|a| Mat::zeros(field, dims[a.target], dims[a.source]))
        .collect();
    for (k, a) in algebra.quiver.arrows.iter().enumerate() {
        for src_off in 0..dims[a.source] {
            let (summand, b) = pos_of[a.source][src_off];
            let prod = algebra.mult(arrow_basis[k], b);
            for (tb, tv, toff) in &layout[summand] {
                if *tv == a.target {
                    let c = prod.get(*tb, 0);
                    if !c.is_zero() {
                        mats[k].set(*toff, src_off, c.clone());
                    }
                }
            }
        }
    }
    let rep = Arc::new(Rep::new(algebra.clone(), dims, mats));
    ProjRep {
        rep,
        summands: vertices.to_vec(),
        layout,
    }
}

pub fn projective_module(algebra: &Arc<Algebra>, v: usize) -> Arc<Rep> {
    projective_rep(algebra, &[v]).rep
}

/// The injective envelope of the simple at v, via duality with the
/// opposite algebra's projective.
pub fn injective_module(algebra: &Arc<Algebra>, v: usize) -> Arc<Rep> {
    let op = algebra.op();
    let p = projective_module(&op, v);
    Arc::new(dual_rep(&p, algebra))
}

/// Dual of a representation of the opposite algebra: same vertex dimensions,
/// each arrow matrix transposed (arrow k of `target` matches the reversed
/// arrow k of `rep.algebra`).
pub fn dual_rep(rep: &Rep, target: &Arc<Algebra>) -> Rep {
    let mats = rep.mats.iter().map(Mat::transpose).collect();
    Rep::new(target.clone(), rep.dims.clone(), mats)
}

/// The morphism from a projective sum determined by the images of the
/// generators: `targets[k]` is a column vector in X at the generator's vertex.
pub fn map_from_projective(p: &ProjRep, x: &Arc<Rep>, targets: &[Mat]) -> RepMap {
    let field = x.algebra.field;
    assert_eq!(targets.len(), p.summands.len());
    let mut blocks: Vec<Mat> = x
        .dims
        .iter()
        .zip(&p.rep.dims)
        .map(|(&xd, &pd)| Mat::zeros(field, xd, pd))
        .collect();
    for (k, entry) in p.layout.iter().enumerate() {
        let t = &targets[k];
        assert_eq!(t.rows(), x.dims[p.summands[k]], "generator image vertex");
        for &(b, vert, off) in entry {
            let path = &p.rep.algebra.basis[b];
            let col = if path.is_trivial() {
                t.clone()
            } else {
                x.path_matrix(&path.arrows).matmul(t)
            };
            for r in 0..x.dims[vert] {
                blocks[vert].set(r, off, col.get(r, 0).clone());
            }
        }
    }
    RepMap::new(p.rep.clone(), x.clone(), blocks)
}

/// Projective cover P(X) -->> X. The kernel lies in the radical of the
/// source, which certifies right minimality.
pub fn projective_cover(x: &Arc<Rep>) -> (ProjRep, RepMap) {
    let t = top(x);
    let mut vertices = Vec::new();
    let mut targets = Vec::new();
    for v in 0..x.dims.len() {
        // Columns of the section lift a basis of top_v into X_v.
        for c in 0..t.section[v].cols() {
            vertices.push(v);
            targets.push(t.section[v].column(c));
        }
    }
    let p = projective_rep(&x.algebra, &vertices);
    let h = map_from_projective(&p, x, &targets);
    debug_assert!(h.is_surjective(), "projective cover must be onto");
    (p, h)
}

/// A minimal projective presentation P1 --f--> P0 --cover--> X -> 0.
pub struct Presentation {
    pub p1: ProjRep,
    pub p0: ProjRep,
    pub f: RepMap,
    pub cover: RepMap,
}

pub fn minimal_presentation(x: &Arc<Rep>) -> Presentation {
    let (p0, cover) = projective_cover(x);
    let (ker, incl) = kernel(&cover);
    let (p1, c1) = projective_cover(&ker);
    let f = incl.compose(&c1);
    Presentation { p1, p0, f, cover }
}

/// Direct sum with inclusion and projection morphisms.
pub fn direct_sum(parts: &[Arc<Rep>]) -> (Arc<Rep>, Vec<RepMap>, Vec<RepMap>) {
    assert!(!parts.is_empty());
    let algebra = parts[0].algebra.clone();
    let field = algebra.field;
    let n = algebra.vertex_count;
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let mats: Vec<Mat> = algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let mut m = Mat::zeros(field, dims[a.target], dims[a.source]);
            let mut r0 = 0;
            let mut c0 = 0;
            for p in parts {
                m.paste(r0, c0, &p.mats[k]);
                r0 += p.dims[a.target];
                c0 += p.dims[a.source];
            }
            m
        })
        .collect();
    let sum = Arc::new(Rep::new(algebra, dims.clone(), mats));
    let mut incls = Vec::new();
    let mut projs = Vec::new();
    let mut before = vec![0usize; n];
    for p in parts {
        let mut iblocks = Vec::new();
        let mut pblocks = Vec::new();
        for v in 0..n {
            let mut i = Mat::zeros(field, dims[v], p.dims[v]);
            i.paste(before[v], 0, &Mat::identity(field, p.dims[v]));
            pblocks.push(i.transpose());
            iblocks.push(i);
        }
        incls.push(RepMap::new(p.clone(), sum.clone(), iblocks));
        projs.push(RepMap::new(sum.clone(), p.clone(), pblocks));
        for v in 0..n {
            before[v] += p.dims[v];
        }
    }
    (sum, incls, projs)
}

/// Recovers a representation from an algebra action on a single total space.
/// `action[b]` is the matrix of basis element b. Returns the representation
/// and the change of basis from vertex coordinates to the ambient space.
pub fn rep_from_action(algebra: &Arc<Algebra>, action: &[Mat]) -> (Rep, Mat) {
    assert_eq!(action.len(), algebra.dim);
    let field = algebra.field;
    let n = algebra.vertex_count;
    let bases: Vec<Mat> = (0..n).map(|v| action[v].column_space_basis()).collect();
    let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
    let arrow_basis: Vec<usize> = algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            algebra
                .basis
                .iter()
                .position(|p| p.arrows == vec![k] && p.source == a.source)
                .unwrap()
        })
        .collect();
    let mats: Vec<Mat> = algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            if dims[a.target] == 0 {
                Mat::zeros(field, 0, dims[a.source])
            } else {
                bases[a.target]
                    .solve(&action[arrow_basis[k]].matmul(&bases[a.source]))
                    .expect("arrow action lands in the target idempotent block")
            }
        })
        .collect();
    let mut change = Mat::zeros(field, action[0].rows(), dims.iter().sum());
    let mut c0 = 0;
    for b in &bases {
        change.paste(0, c0, b);
        c0 += b.cols();
    }
    (Rep::new(algebra.clone(), dims, mats), change)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraPresentation, Quiver, Relation};
    use crate::exactmat::{FieldTag, Scalar};

    fn a2(field: FieldTag) -> Arc<Algebra> {
        build_algebra(&AlgebraPresentation {
            quiver: Quiver::new(2, vec![(0, 1, "a")]),
            relations: vec![],
            nilpotency_bound: 2,
            field,
        })
        .unwrap()
    }

    #[test]
    fn a2_standard_modules() {
        let a = a2(FieldTag::Rationals);
        assert_eq!(projective_module(&a, 0).dims, vec![1, 1]);
        assert_eq!(projective_module(&a, 1).dims, vec![0, 1]);
        assert_eq!(simple_module(&a, 0).dims, vec![1, 0]);
        assert_eq!(injective_module(&a, 0).dims, vec![1, 0]);
        assert_eq!(injective_module(&a, 1).dims, vec![1, 1]);
    }

    // Independent oracle: count intertwiners over F_2 by brute force.
    fn hom_count_oracle_f2(x: &Rep, y: &Rep) -> usize {
        let nvars: usize = x
            .dims
            .iter()
            .zip(&y.dims)
            .map(|(&a, &b)| a * b)
            .sum();
        assert!(nvars <= 16);
        let field = FieldTag::Prime(2);
        let mut count = 0;
        for bits in 0..(1u32 << nvars) {
            let mut blocks = Vec::new();
            let mut idx = 0;
            for v in 0..x.dims.len() {
                let mut m = Mat::zeros(field, y.dims[v], x.dims[v]);
                for r in 0..y.dims[v] {
                    for c in 0..x.dims[v] {
                        if bits >> idx & 1 == 1 {
                            m.set(r, c, Scalar::one(field));
                        }
                        idx += 1;
                    }
                }
                blocks.push(m);
            }
            let ok = x.algebra.quiver.arrows.iter().enumerate().all(|(k, a)| {
                blocks[a.target].matmul(&x.mats[k]) == y.mats[k].matmul(&blocks[a.source])
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn hom_dims_match_brute_force() {
        let a = a2(FieldTag::Prime(2));
        let p1 = projective_module(&a, 0);
        let p2 = projective_module(&a, 1);
        let s1 = simple_module(&a, 0);
        for (x, y, expect) in [
            (&p1, &s1, 1usize),
            (&p2, &s1, 0),
            (&p1, &p1, 1),
            (&p2, &p1, 1),
            (&p1, &p2, 0),
            (&s1, &p1, 0),
        ] {
            assert_eq!(hom_dim(x, y), expect, "hom dim");
            assert_eq!(hom_count_oracle_f2(x, y), 1usize << expect, "oracle count");
        }
    }

    #[test]
    fn kernel_cokernel_of_p2_into_p1() {
        let a = a2(FieldTag::Rationals);
        let p1 = projective_module(&a, 0);
        let p2 = projective_module(&a, 1);
        let homs = hom_basis(&p2, &p1);
        assert_eq!(homs.len(), 1);
        let f = &homs[0];
        let (ker, _) = kernel(f);
        assert!(ker.is_zero());
        let cok = cokernel(f);
        assert_eq!(cok.rep.dims, vec![1, 0]);
        assert!(cok.proj.is_surjective());
        assert!(cok.proj.compose(f).is_zero());
    }

    #[test]
    fn radical_and_top_of_p1() {
        let a = a2(FieldTag::Rationals);
        let p1 = projective_module(&a, 0);
        let (rad, incl) = radical(&p1);
        assert_eq!(rad.dims, vec![0, 1]);
        assert!(incl.is_injective());
        let t = top(&p1);
        assert_eq!(t.rep.dims, vec![1, 0]);
    }

    #[test]
    fn projective_cover_of_simple() {
        let a = a2(FieldTag::Rationals);
        let s1 = simple_module(&a, 0);
        let (p, h) = projective_cover(&s1);
        assert_eq!(p.summands, vec![0]);
        assert!(h.is_surjective());
        let (ker, _) = kernel(&h);
        assert_eq!(ker.dims, vec![0, 1]);
    }

    #[test]
    fn minimal_presentation_of_simple() {
        let a = a2(FieldTag::Rationals);
        let s1 = simple_module(&a, 0);
        let pres = minimal_presentation(&s1);
        assert_eq!(pres.p0.summands, vec![0]);
        assert_eq!(pres.p1.summands, vec![1]);
        assert!(pres.cover.compose(&pres.f).is_zero());
        // Right minimality: the image of f lies in the radical of P0.
        let (_, rad_incl) = radical(&pres.p0.rep);
        for v in 0..2 {
            assert!(rad_incl.blocks[v].spans(&pres.f.blocks[v]));
        }
    }

    #[test]
    fn direct_sum_roundtrip() {
        let a = a2(FieldTag::Prime(3));
        let p1 = projective_module(&a, 0);
        let s1 = simple_module(&a, 0);
        let (sum, incls, projs) = direct_sum(&[p1.clone(), s1.clone()]);
        assert_eq!(sum.dims, vec![2, 1]);
        for (i, p) in incls.iter().zip(&projs) {
            let round = p.compose(i);
            assert!(round.blocks.iter().all(Mat::is_identity));
        }
        assert!(projs[1].compose(&incls[0]).is_zero());
    }

    #[test]
    fn relation_violation_rejected() {
        // Two-cycle algebra truncated at length 3: a one dimensional space at
        // each vertex with both arrows acting by 1 violates the nilpotency.
        let quiver = Quiver::new(2, vec![(0, 1, "a12"), (1, 0, "a21")]);
        let a = build_algebra(&AlgebraPresentation {
            quiver,
            relations: vec![],
            nilpotency_bound: 3,
            field: FieldTag::Prime(2),
        })
        .unwrap();
        let field = FieldTag::Prime(2);
        let one = Mat::identity(field, 1);
        let bad = Rep {
            algebra: a.clone(),
            dims: vec![1, 1],
            mats: vec![one.clone(), one],
        };
        assert!(!bad.satisfies_relations());
    }

    #[test]
    fn dual_of_op_projective_is_injective() {
        let a = a2(FieldTag::Rationals);
        let i2 = injective_module(&a, 1);
        assert_eq!(i2.dims, vec![1, 1]);
        // I(2) for A_2 equals P(1).
        assert_eq!(hom_dim(&projective_module(&a, 0), &i2), 1);
    }

    #[test]
    fn rep_from_action_roundtrip() {
        let a = a2(FieldTag::Rationals);
        let p1 = projective_module(&a, 0);
        let action: Vec<Mat> = (0..a.dim).map(|b| p1.act(b)).collect();
        let (rec, _) = rep_from_action(&a, &action);
        assert_eq!(rec.dims, p1.dims);
        assert_eq!(hom_dim(&Arc::new(rec), &p1), 1);
    }

    #[test]
    fn relations_respected_in_projectives() {
        // Commutative square with commutativity relation.
        let quiver = Quiver::new(
            4,
            vec![(0, 1, "a"), (0, 2, "b"), (1, 3, "c"), (2, 3, "d")],
        );
        let field = FieldTag::Rationals;
        let pres = AlgebraPresentation {
            quiver,
            relations: vec![Relation {
                terms: vec![
                    (Scalar::one(field), vec![0, 2]),
                    (Scalar::one(field).neg(), vec![1, 3]),
                ],
            }],
            nilpotency_bound: 3,
            field,
        };
        let a = build_algebra(&pres).unwrap();
        assert_eq!(a.dim, 4 + 4 + 1);
        let p0 = projective_module(&a, 0);
        assert_eq!(p0.dims, vec![1, 1, 1, 1]);
        assert!(p0.satisfies_relations());
    }
}
