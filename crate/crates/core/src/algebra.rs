//! Finite algebras on `K^w`, viewed as `F_p`-vector spaces.
//!
//! Every algebra here stores an element as `w` coordinates in `K`
//! (`Σ x_i t^i` for Petit algebras, `(x, y)` for the `K ⊕ K` families).
//! Nuclei, division checks and automorphism searches only use the
//! multiplication, so they are written once against [`FiniteAlgebra`].

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower};
use crate::linalg::{Matrix, RowSpace};

pub type Element = Vec<Elem>;

pub trait FiniteAlgebra {
    fn tower(&self) -> &FieldTower;

    /// Number of `K`-coordinates of an element.
    fn width(&self) -> usize;

    fn mul(&self, a: &[Elem], b: &[Elem]) -> Element;

    fn one(&self) -> Element {
        let mut e = vec![Elem::ZERO; self.width()];
        e[0] = Elem::ONE;
        e
    }

    /// `x·e_i`: the element with `x` in coordinate `i`.
    fn coord(&self, x: Elem, i: usize) -> Element {
        let mut e = vec![Elem::ZERO; self.width()];
        e[i] = x;
        e
    }

    fn dim_fp(&self) -> usize {
        self.width() * self.tower().degree()
    }

    /// Number of elements, `|K|^w`.
    fn order(&self) -> u128 {
        (self.tower().size() as u128).pow(self.width() as u32)
    }

    fn add(&self, a: &[Elem], b: &[Elem]) -> Element {
        let t = self.tower();
        a.iter().zip(b).map(|(&x, &y)| t.add(x, y)).collect()
    }

    fn sub(&self, a: &[Elem], b: &[Elem]) -> Element {
        let t = self.tower();
        a.iter().zip(b).map(|(&x, &y)| t.sub(x, y)).collect()
    }

    fn to_fp(&self, a: &[Elem]) -> Vec<u32> {
        let t = self.tower();
        a.iter().flat_map(|&x| t.coeffs(x)).collect()
    }

    fn from_fp(&self, v: &[u32]) -> Element {
        let t = self.tower();
        v.chunks(t.degree()).map(|c| t.from_coeffs(c).expect("valid digits")).collect()
    }

    /// `F_p`-basis: `b·e_i` for `b` in the power basis of `K`, coordinate-major.
    fn fp_basis(&self) -> Vec<Element> {
        let basis = self.tower().prime_basis();
        (0..self.width())
            .flat_map(|i| basis.iter().map(move |&b| (b, i)))
            .map(|(b, i)| self.coord(b, i))
            .collect()
    }

    /// The element with index `idx` in `0..order()`: coordinate `i` has
    /// encoding `(idx / |K|^i) mod |K|`.
    fn element_at(&self, mut idx: u128) -> Element {
        let size = self.tower().size() as u128;
        (0..self.width())
            .map(|_| {
                let e = Elem((idx % size) as u32);
                idx /= size;
                e
            })
            .collect()
    }

    fn index_of(&self, a: &[Elem]) -> u128 {
        let size = self.tower().size() as u128;
        a.iter().rev().fold(0u128, |acc, x| acc * size + x.0 as u128)
    }

    fn apply(&self, m: &Matrix, a: &[Elem]) -> Element {
        self.from_fp(&m.apply(&self.to_fp(a), self.tower().p()))
    }
}

/// `(xy)z - x(yz)`.
pub fn associator<A: FiniteAlgebra + ?Sized>(alg: &A, x: &[Elem], y: &[Elem], z: &[Elem]) -> Element {
    let left = alg.mul(&alg.mul(x, y), z);
    let right = alg.mul(x, &alg.mul(y, z));
    alg.sub(&left, &right)
}

/// An `F_p`-subspace of an algebra together with its `F`-dimension.
#[derive(Clone, Debug)]
pub struct Subspace {
    /// Echelon `F_p`-basis, in coordinates.
    pub basis: Vec<Vec<u32>>,
    pub fp_dim: usize,
    pub f_dim: usize,
    span: RowSpace,
}

impl Subspace {
    fn from_kernel(kernel: Vec<Vec<u32>>, p: u32, cols: usize, r: u32) -> Self {
        let mut span = RowSpace::new(p, cols);
        for v in &kernel {
            span.insert(v.clone());
        }
        let basis = span.basis();
        let fp_dim = basis.len();
        Subspace { basis, fp_dim, f_dim: fp_dim / r as usize, span }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.span.contains(v)
    }

    /// Every element of the subspace, `p^{fp_dim}` of them.
    pub fn elements(&self, p: u32) -> Vec<Vec<u32>> {
        let cols = self.span_cols();
        let mut out = vec![vec![0u32; cols]];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * p as usize);
            for v in &out {
                for c in 0..p {
                    next.push(v.iter().zip(b).map(|(x, y)| (x + c * y) % p).collect());
                }
            }
            out = next;
        }
        out
    }

    fn span_cols(&self) -> usize {
        self.basis.first().map_or(0, |b| b.len())
    }
}

/// The nuclei and center of an algebra.
#[derive(Clone, Debug)]
pub struct Nuclei {
    pub left: Subspace,
    pub middle: Subspace,
    pub right: Subspace,
    pub nucleus: Subspace,
    pub center: Subspace,
    /// Whether `K·1` lies in the left, middle, right nucleus.
    pub k_in: [bool; 3],
    /// Whether the left, middle, right nucleus equals `K·1`.
    pub k_equal: [bool; 3],
}

impl Nuclei {
    /// `(dim N_l, dim N_m, dim N_r)` over `F`.
    pub fn f_dims(&self) -> [usize; 3] {
        [self.left.f_dim, self.middle.f_dim, self.right.f_dim]
    }
}

/// Solves for all four nuclei and the center as kernels of `F_p`-linear
/// systems assembled from associators on basis triples.
pub fn nuclei<A: FiniteAlgebra + ?Sized>(alg: &A) -> Nuclei {
    let t = alg.tower();
    let p = t.p();
    let d = alg.dim_fp();
    let basis = alg.fp_basis();
    let products: Vec<Vec<Element>> =
        basis.iter().map(|x| basis.iter().map(|y| alg.mul(x, y)).collect()).collect();
    // assoc[(i*d + j)*d + k] = coords of [b_i, b_j, b_k]
    let mut assoc = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let l = alg.mul(&products[i][j], &basis[k]);
                let r = alg.mul(&basis[i], &products[j][k]);
                assoc.push(alg.to_fp(&alg.sub(&l, &r)));
            }
        }
    }
    let at = |i: usize, j: usize, k: usize| &assoc[(i * d + j) * d + k];

    let mut left = RowSpace::new(p, d);
    let mut middle = RowSpace::new(p, d);
    let mut right = RowSpace::new(p, d);
    for u in 0..d {
        for v in 0..d {
            for c in 0..d {
                left.insert((0..d).map(|i| at(i, u, v)[c]).collect());
                middle.insert((0..d).map(|j| at(u, j, v)[c]).collect());
                right.insert((0..d).map(|k| at(u, v, k)[c]).collect());
            }
        }
    }
    let mut all = left.clone();
    for row in middle.basis().into_iter().chain(right.basis()) {
        all.insert(row);
    }
    let mut center = all.clone();
    for j in 0..d {
        let comm: Vec<Vec<u32>> = (0..d)
            .map(|i| alg.to_fp(&alg.sub(&products[i][j], &products[j][i])))
            .collect();
        for c in 0..d {
            center.insert((0..d).map(|i| comm[i][c]).collect());
        }
    }

    let r = t.r();
    let sub = |rs: &RowSpace| Subspace::from_kernel(rs.kernel(), p, d, r);
    let left = sub(&left);
    let middle = sub(&middle);
    let right = sub(&right);
    let k_vectors: Vec<Vec<u32>> =
        t.prime_basis().into_iter().map(|b| alg.to_fp(&alg.coord(b, 0))).collect();
    let holds = |s: &Subspace| k_vectors.iter().all(|v| s.contains(v));
    let k_in = [holds(&left), holds(&middle), holds(&right)];
    let deg = t.degree();
    let k_equal = [
        k_in[0] && left.fp_dim == deg,
        k_in[1] && middle.fp_dim == deg,
        k_in[2] && right.fp_dim == deg,
    ];
    Nuclei { left, middle, right, nucleus: sub(&all), center: sub(&center), k_in, k_equal }
}

/// Whether `L_a` is injective for every nonzero `a`, i.e. no zero divisors.
pub fn is_division<A: FiniteAlgebra + ?Sized>(alg: &A, bound: u128) -> Result<bool> {
    let order = alg.order();
    if order > bound {
        return Err(Error::OracleBound { order, bound });
    }
    let p = alg.tower().p();
    let basis = alg.fp_basis();
    for idx in 1..order {
        let a = alg.element_at(idx);
        let cols = basis.iter().map(|b| alg.to_fp(&alg.mul(&a, b))).collect();
        if (Matrix { dim: basis.len(), cols }).rank(p) < basis.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cached basis products for repeated homomorphism checks.
pub struct MulChecker<'a, S: FiniteAlgebra + ?Sized, D: FiniteAlgebra + ?Sized> {
    src: &'a S,
    dst: &'a D,
    // coords of b_i b_j in src
    products: Vec<Vec<Vec<u32>>>,
    p: u32,
}

impl<'a, S: FiniteAlgebra + ?Sized, D: FiniteAlgebra + ?Sized> MulChecker<'a, S, D> {
    pub fn new(src: &'a S, dst: &'a D) -> Self {
        let basis = src.fp_basis();
        let products = basis
            .iter()
            .map(|x| basis.iter().map(|y| src.to_fp(&src.mul(x, y))).collect())
            .collect();
        MulChecker { src, dst, products, p: src.tower().p() }
    }

    /// Whether the map given by basis images is multiplicative.
    pub fn multiplicative(&self, images: &[Element]) -> bool {
        let d = images.len();
        let coords: Vec<Vec<u32>> = images.iter().map(|x| self.dst.to_fp(x)).collect();
        let m = Matrix { dim: d, cols: coords };
        for i in 0..d {
            for j in 0..d {
                let lhs = m.apply(&self.products[i][j], self.p);
                let rhs = self.dst.to_fp(&self.dst.mul(&images[i], &images[j]));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Multiplicative and bijective.
    pub fn is_isomorphism(&self, m: &Matrix) -> bool {
        if m.rank(self.p) < m.dim {
            return false;
        }
        let images: Vec<Element> = m.cols.iter().map(|c| self.dst.from_fp(c)).collect();
        self.multiplicative(&images)
    }

    pub fn src(&self) -> &S {
        self.src
    }
}

pub fn matrix_of<A: FiniteAlgebra + ?Sized>(alg: &A, images: &[Element]) -> Matrix {
    Matrix { dim: images.len(), cols: images.iter().map(|x| alg.to_fp(x)).collect() }
}

/// Left-normed power `((u∘u)∘u)…`; `u^0 = 1`.
pub fn left_power<A: FiniteAlgebra + ?Sized>(alg: &A, u: &[Elem], i: usize) -> Element {
    (0..i).fold(alg.one(), |acc, _| alg.mul(&acc, u))
}

/// Checks that every element decomposes as `Σ (x_i·1)∘t^{∘i}` with
/// `t = e_1`, which is what the structured search relies on.
pub fn has_power_basis<A: FiniteAlgebra + ?Sized>(alg: &A) -> bool {
    let t = alg.tower();
    if alg.width() < 2 {
        return false;
    }
    let gen = alg.coord(Elem::ONE, 1);
    (0..alg.width()).all(|i| {
        let pw = left_power(alg, &gen, i);
        pw == alg.coord(Elem::ONE, i)
            && t.prime_basis().into_iter().all(|b| alg.mul(&alg.coord(b, 0), &pw) == alg.coord(b, i))
    })
}

/// All isomorphisms `src → dst` that map `K·1` onto `K·1`.
///
/// Such a map restricts to some `τ = σ^j` on `K` and is determined by the
/// image `u` of `t`: `H(Σ x_i t^i) = Σ τ(x_i)·1 ∘ u^{∘i}`. Both algebras must
/// have a nucleus slot (left, middle or right) equal to `K·1`, so that every
/// isomorphism is of this form.
pub fn structured_search<S, D>(src: &S, dst: &D, bound: u128) -> Result<Vec<Matrix>>
where
    S: FiniteAlgebra + ?Sized,
    D: FiniteAlgebra + ?Sized,
{
    let order = dst.order();
    if order > bound {
        return Err(Error::OracleBound { order, bound });
    }
    if src.width() != dst.width() || src.tower() != dst.tower() {
        return Ok(Vec::new());
    }
    if !has_power_basis(src) || !has_power_basis(dst) {
        return Err(Error::Hypothesis("algebra is not generated by K·1 and t".into()));
    }
    let ns = nuclei(src);
    let nd = nuclei(dst);
    if !(0..3).any(|s| ns.k_equal[s] && nd.k_equal[s]) {
        return Err(Error::Hypothesis("no nucleus equal to K·1 in a common slot".into()));
    }
    let t = src.tower();
    let checker = MulChecker::new(src, dst);
    let w = src.width();
    let basis = t.prime_basis();
    let p = t.p();
    let mut found = Vec::new();
    for j in 0..t.n() as i64 {
        let tau_basis: Vec<Element> = basis.iter().map(|&b| dst.coord(t.frobenius(b, j), 0)).collect();
        for idx in 0..order {
            let u = dst.element_at(idx);
            let mut powers = Vec::with_capacity(w);
            powers.push(dst.one());
            for i in 1..w {
                powers.push(dst.mul(&powers[i - 1], &u));
            }
            let images: Vec<Element> = powers
                .iter()
                .flat_map(|pw| tau_basis.iter().map(move |tb| (tb, pw)))
                .map(|(tb, pw)| dst.mul(tb, pw))
                .collect();
            if checker.multiplicative(&images) {
                let m = matrix_of(dst, &images);
                if m.rank(p) == m.dim {
                    found.push(m);
                }
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// All unital multiplicative bijections found by enumerating every matrix
/// over `F_p` fixing `1`. Only feasible for tiny algebras over a prime field.
pub fn gl_search<A: FiniteAlgebra + ?Sized>(alg: &A, max_candidates: u128) -> Result<Vec<Matrix>> {
    let t = alg.tower();
    let p = t.p();
    if t.r() != 1 {
        return Err(Error::Hypothesis("linear search requires F = F_p".into()));
    }
    let d = alg.dim_fp();
    let free = (p as u128).pow((d * (d - 1)) as u32);
    if free > max_candidates {
        return Err(Error::OracleBound { order: free, bound: max_candidates });
    }
    let one = alg.to_fp(&alg.one());
    let one_pos = one.iter().position(|&c| c != 0).expect("1 is nonzero");
    let checker = MulChecker::new(alg, alg);
    let mut found = Vec::new();
    for idx in 0..free {
        let mut rest = idx;
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            if j == one_pos {
                cols.push(one.clone());
                continue;
            }
            let col: Vec<u32> = (0..d)
                .map(|_| {
                    let c = (rest % p as u128) as u32;
                    rest /= p as u128;
                    c
                })
                .collect();
            cols.push(col);
        }
        let m = Matrix { dim: d, cols };
        if checker.is_isomorphism(&m) {
            found.push(m);
        }
    }
    found.sort();
    Ok(found)
}

/// Algebra with the product reversed.
pub struct Opposite<'a, A: FiniteAlgebra + ?Sized>(pub &'a A);

impl<A: FiniteAlgebra + ?Sized> FiniteAlgebra for Opposite<'_, A> {
    fn tower(&self) -> &FieldTower {
        self.0.tower()
    }
    fn width(&self) -> usize {
        self.0.width()
    }
    fn mul(&self, a: &[Elem], b: &[Elem]) -> Element {
        self.0.mul(b, a)
    }
}

/// Index of every map in a list, by canonical key.
pub fn index_by_key(maps: &[Matrix]) -> HashMap<Vec<u32>, usize> {
    maps.iter().enumerate().map(|(i, m)| (m.key(), i)).collect()
}
