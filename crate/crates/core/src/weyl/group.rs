//! The Weyl group W0 = Z/2 × S3 of G2 and its action on the root lattice.
//!
//! Abstract elements are pairs `(sign, perm)`. The matrix of an element on the
//! root lattice (basis α1 short, α2 long, columns are images of basis vectors) is
//! obtained from reflections computed out of the invariant form: `(1,(12))` is
//! the short reflection `s_{α1}`, `(1,(23))` is `s_{2α1+α2}` and the central
//! element `(-1, id)` is `s_{2α1+α2} s_{α2}`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Mat2 = [[i64; 2]; 2];

/// A permutation of {1,2,3}, stored 0-based as the images of 0, 1, 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub [u8; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2]);
    /// (12)
    pub const SWAP12: Perm = Perm([1, 0, 2]);
    /// (23)
    pub const SWAP23: Perm = Perm([0, 2, 1]);
    /// (123)
    pub const CYCLE: Perm = Perm([1, 2, 0]);

    pub fn all() -> [Perm; 6] {
        [
            Perm([0, 1, 2]),
            Perm([0, 2, 1]),
            Perm([1, 0, 2]),
            Perm([1, 2, 0]),
            Perm([2, 0, 1]),
            Perm([2, 1, 0]),
        ]
    }

    pub fn index(self) -> usize {
        Perm::all().iter().position(|&p| p == self).unwrap()
    }

    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `(self ∘ other)(i) = self(other(i))`
    pub fn compose(self, other: Perm) -> Perm {
        Perm([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
        ])
    }

    pub fn inverse(self) -> Perm {
        let mut inv = [0u8; 3];
        for i in 0..3 {
            inv[self.0[i] as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Permutation matrix sending `e_i` to `e_{σ(i)}`.
    pub fn matrix(self) -> [[i64; 3]; 3] {
        let mut m = [[0; 3]; 3];
        for i in 0..3 {
            m[self.apply(i)][i] = 1;
        }
        m
    }

    /// One-line notation on {1,2,3}, e.g. `"213"` for (12).
    pub fn one_line(self) -> String {
        self.0.iter().map(|&i| char::from(b'1' + i)).collect()
    }

    pub fn from_one_line(s: &str) -> Result<Perm> {
        let bytes = s.as_bytes();
        if bytes.len() != 3 {
            return Err(Error::Parse(format!("bad permutation {s:?}")));
        }
        let mut imgs = [0u8; 3];
        for (i, &b) in bytes.iter().enumerate() {
            if !(b'1'..=b'3').contains(&b) {
                return Err(Error::Parse(format!("bad permutation {s:?}")));
            }
            imgs[i] = b - b'1';
        }
        let mut seen = imgs;
        seen.sort_unstable();
        if seen != [0, 1, 2] {
            return Err(Error::Parse(format!("bad permutation {s:?}")));
        }
        Ok(Perm(imgs))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line())
    }
}

/// Abstract element `(sign, perm)` of Z/2 × S3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct W0Element {
    pub sign: i8,
    pub perm: Perm,
}

impl W0Element {
    pub const IDENTITY: W0Element = W0Element {
        sign: 1,
        perm: Perm::IDENTITY,
    };
    pub const CENTER: W0Element = W0Element {
        sign: -1,
        perm: Perm::IDENTITY,
    };

    pub fn new(sign: i8, perm: Perm) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        W0Element { sign, perm }
    }

    /// All 12 elements, ordered by [`W0Element::index`].
    pub fn all() -> Vec<W0Element> {
        [1i8, -1]
            .into_iter()
            .flat_map(|s| Perm::all().into_iter().map(move |p| W0Element::new(s, p)))
            .collect()
    }

    pub fn index(self) -> usize {
        (if self.sign == 1 { 0 } else { 6 }) + self.perm.index()
    }

    pub fn compose(self, other: W0Element) -> W0Element {
        W0Element::new(self.sign * other.sign, self.perm.compose(other.perm))
    }

    pub fn inverse(self) -> W0Element {
        W0Element::new(self.sign, self.perm.inverse())
    }

    pub fn order(self) -> usize {
        let mut g = self;
        let mut n = 1;
        while g != W0Element::IDENTITY {
            g = g.compose(self);
            n += 1;
        }
        n
    }

    /// `"+213"` or `"-123"`.
    pub fn parse(s: &str) -> Result<W0Element> {
        let s = s.trim();
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'+') => (1, &s[1..]),
            Some(b'-') => (-1, &s[1..]),
            _ => return Err(Error::Parse(format!("bad W0 element {s:?}"))),
        };
        Ok(W0Element::new(sign, Perm::from_one_line(rest)?))
    }
}

impl fmt::Debug for W0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for W0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == 1 { '+' } else { '-' };
        write!(f, "{s}{}", self.perm.one_line())
    }
}

/// Invariant symmetric form on the root lattice, `(α1,α1) = 2`, `(α2,α2) = 6`.
pub const INVARIANT_FORM: Mat2 = [[2, -3], [-3, 6]];

pub const ALPHA1: [i64; 2] = [1, 0];
pub const ALPHA2: [i64; 2] = [0, 1];

fn pair(x: [i64; 2], y: [i64; 2]) -> i64 {
    let b = INVARIANT_FORM;
    x[0] * (b[0][0] * y[0] + b[0][1] * y[1]) + x[1] * (b[1][0] * y[0] + b[1][1] * y[1])
}

/// Matrix of `s_β(x) = x - 2(x,β)/(β,β) β`; panics if the result is not integral.
pub fn reflection(beta: [i64; 2]) -> Mat2 {
    let bb = pair(beta, beta);
    let mut m = [[0; 2]; 2];
    for (j, e) in [ALPHA1, ALPHA2].into_iter().enumerate() {
        let num = 2 * pair(e, beta);
        assert!(num % bb == 0, "non-integral Cartan pairing");
        let k = num / bb;
        m[0][j] = e[0] - k * beta[0];
        m[1][j] = e[1] - k * beta[1];
    }
    m
}

pub fn mat2_mul(a: Mat2, b: Mat2) -> Mat2 {
    let mut m = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

pub fn mat2_apply(a: Mat2, v: [i64; 2]) -> [i64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

pub const MINUS_IDENTITY: Mat2 = [[-1, 0], [0, -1]];
pub const IDENTITY2: Mat2 = [[1, 0], [0, 1]];

/// The twelve roots of G2 in the basis (α1, α2).
pub fn g2_roots() -> Vec<[i64; 2]> {
    let positive = [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]];
    positive
        .iter()
        .flat_map(|&[a, b]| [[a, b], [-a, -b]])
        .collect()
}

/// An element of W0 together with its matrix on the root lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub element: W0Element,
    pub matrix: Mat2,
}

impl WeylElement {
    pub fn sign(&self) -> i8 {
        self.element.sign
    }

    pub fn perm(&self) -> Perm {
        self.element.perm
    }
}

/// The 12 elements of W0 with their root-lattice matrices, in index order.
pub fn build_w0() -> Vec<WeylElement> {
    let short_12 = reflection(ALPHA1);
    let short_23 = reflection([2, 1]);
    let center = mat2_mul(short_23, reflection(ALPHA2));

    // S3 part by breadth-first search over words in the two generators
    let mut rho: [Option<Mat2>; 6] = [None; 6];
    rho[Perm::IDENTITY.index()] = Some(IDENTITY2);
    let mut queue = VecDeque::from([Perm::IDENTITY]);
    while let Some(p) = queue.pop_front() {
        let m = rho[p.index()].unwrap();
        for (gen, gm) in [(Perm::SWAP12, short_12), (Perm::SWAP23, short_23)] {
            let q = gen.compose(p);
            if rho[q.index()].is_none() {
                rho[q.index()] = Some(mat2_mul(gm, m));
                queue.push_back(q);
            }
        }
    }
    W0Element::all()
        .into_iter()
        .map(|g| {
            let base = rho[g.perm.index()].expect("generators reach all of S3");
            let matrix = if g.sign == 1 {
                base
            } else {
                mat2_mul(center, base)
            };
            WeylElement { element: g, matrix }
        })
        .collect()
}

/// A subgroup of W0 given by its full element list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<W0Element>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

impl Subgroup {
    /// Checks closure eagerly; the element list is sorted and deduplicated.
    pub fn new(elements: impl IntoIterator<Item = W0Element>) -> Result<Subgroup> {
        let set: BTreeSet<W0Element> = elements.into_iter().collect();
        if !set.contains(&W0Element::IDENTITY) {
            return Err(Error::NotAGroup);
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::NotAGroup);
                }
            }
        }
        let mut elements: Vec<W0Element> = set.into_iter().collect();
        elements.sort_by_key(|g| g.index());
        Ok(Subgroup { elements })
    }

    /// Subgroup generated by the given elements.
    pub fn generated_by(gens: &[W0Element]) -> Subgroup {
        let mut set: BTreeSet<W0Element> = [W0Element::IDENTITY].into_iter().collect();
        let mut frontier: Vec<W0Element> = vec![W0Element::IDENTITY];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = g.compose(x);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup::new(set).expect("generated set is closed")
    }

    pub fn full() -> Subgroup {
        Subgroup::new(W0Element::all()).unwrap()
    }

    pub fn trivial() -> Subgroup {
        Subgroup::new([W0Element::IDENTITY]).unwrap()
    }

    pub fn center() -> Subgroup {
        Subgroup::generated_by(&[W0Element::CENTER])
    }

    /// `{(sgn σ, σ) : σ ∈ S3}`.
    pub fn graph_s3() -> Subgroup {
        Subgroup::new(Perm::all().into_iter().map(|p| W0Element::new(p.sign(), p))).unwrap()
    }

    /// Product `A × B` of a subgroup `A ⊆ Z/2` (given by `with_center`) and `B ⊆ S3`.
    pub fn product(with_center: bool, perms: &[Perm]) -> Result<Subgroup> {
        let signs: &[i8] = if with_center { &[1, -1] } else { &[1] };
        Subgroup::new(
            signs
                .iter()
                .flat_map(|&s| perms.iter().map(move |&p| W0Element::new(s, p))),
        )
    }

    /// Graph `{(χ(σ), σ)}` of a subgroup of S3 whose sign character is nontrivial.
    pub fn graph(perms: &[Perm]) -> Result<Subgroup> {
        Subgroup::new(perms.iter().map(|&p| W0Element::new(p.sign(), p)))
    }

    pub fn a3() -> Vec<Perm> {
        vec![Perm::IDENTITY, Perm::CYCLE, Perm::CYCLE.inverse()]
    }

    /// Names: `trivial`, `center`/`Z2`, `S2`, `A3`, `S3`, `Z2xS2`, `Z2xA3`,
    /// `graph`/`graphS3`, `graphS2`, `W0`; otherwise a comma list like `+123,-213`.
    pub fn parse(text: &str) -> Result<Subgroup> {
        let s2 = [Perm::IDENTITY, Perm::SWAP12];
        match text.trim() {
            "trivial" | "1" => Ok(Subgroup::trivial()),
            "center" | "Z2" => Ok(Subgroup::center()),
            "S2" => Subgroup::product(false, &s2),
            "A3" => Subgroup::product(false, &Subgroup::a3()),
            "S3" => Subgroup::product(false, &Perm::all()),
            "Z2xS2" => Subgroup::product(true, &s2),
            "Z2xA3" => Subgroup::product(true, &Subgroup::a3()),
            "graph" | "graphS3" => Ok(Subgroup::graph_s3()),
            "graphS2" => Subgroup::graph(&s2),
            "W0" | "Z2xS3" => Ok(Subgroup::full()),
            list => {
                let elems = list
                    .split(',')
                    .map(W0Element::parse)
                    .collect::<Result<Vec<_>>>()?;
                Subgroup::new(elems)
            }
        }
    }

    pub fn elements(&self) -> &[W0Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: W0Element) -> bool {
        self.elements.contains(&g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// Projection to Z/2 is onto.
    pub fn sign_onto(&self) -> bool {
        self.elements.iter().any(|g| g.sign == -1)
    }

    pub fn s3_projection(&self) -> BTreeSet<Perm> {
        self.elements.iter().map(|g| g.perm).collect()
    }

    /// Projection to S3 acts transitively on {1,2,3}.
    pub fn s3_transitive(&self) -> bool {
        let orbit: BTreeSet<usize> = self.elements.iter().map(|g| g.perm.apply(0)).collect();
        orbit.len() == 3
    }

    pub fn cyclic_generator(&self) -> Option<W0Element> {
        self.elements
            .iter()
            .copied()
            .find(|g| g.order() == self.order())
    }

    /// Every subgroup of W0, by exhaustive search over subsets containing 1.
    pub fn all_subgroups() -> Vec<Subgroup> {
        let all = W0Element::all();
        let mut out = Vec::new();
        for mask in 0u32..(1 << 11) {
            let mut elems = vec![W0Element::IDENTITY];
            for (bit, &g) in all[1..].iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    elems.push(g);
                }
            }
            if let Ok(s) = Subgroup::new(elems) {
                out.push(s);
            }
        }
        out
    }

    /// A Sylow p-subgroup of `self`.
    pub fn sylow(&self, p: usize) -> Subgroup {
        let mut target = 1;
        let mut n = self.order();
        while n.is_multiple_of(p) {
            target *= p;
            n /= p;
        }
        Subgroup::all_subgroups()
            .into_iter()
            .find(|s| s.order() == target && s.is_subgroup_of(self))
            .expect("Sylow subgroups exist")
    }
}
