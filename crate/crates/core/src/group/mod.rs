//! Concrete group backends.
//!
//! Every backend provides the group law in a unique normal form, a proper
//! left-invariant metric (orbit metric for the geometric backends, word
//! metric otherwise), conjugacy and centralizer oracles, and enough exact
//! geometry to drive the chain operators built on top.

pub mod dihedral;
pub mod finite;
pub mod free;
pub mod geometry;
pub mod lattice;

use std::cmp::Ordering;
use std::fmt;

use crate::metric::Dist;
use crate::num::Q;
use thiserror::Error;

pub use finite::FiniteGroup;
pub use geometry::{AxisCoord, ConvexSet, FlatPoint, ModelPoint};

/// Group element in backend normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// Index into a finite multiplication table.
    Finite(u32),
    /// Integer vector of Z^n.
    Lattice(Vec<i64>),
    /// Freely reduced word; letter `i > 0` is generator `i-1`, `-i` its inverse.
    Free(Vec<i8>),
    /// Isometry of the line: `x -> x + t` or `x -> t - x`.
    Dihedral { t: i64, flip: bool },
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("operands from different group backends")]
    MixedBackend,
    #[error("operation unsupported by this backend: {0}")]
    Unsupported(&'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

pub type GResult<T> = Result<T, GroupError>;

/// Which contraction scheme the backend's geometry follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeomCase {
    /// Proper cocompact action on a flat model with fundamental domain.
    Flat,
    /// Word metric on a (0- or finitely-) hyperbolic Cayley graph.
    Word,
}

#[derive(Clone, Debug)]
pub enum GroupModel {
    Finite(finite::FiniteGroup),
    Lattice(lattice::LatticeGroup),
    Free(free::FreeGroup),
    Dihedral(dihedral::DihedralGroup),
}

impl GroupModel {
    pub fn finite(g: finite::FiniteGroup) -> Self {
        GroupModel::Finite(g)
    }

    pub fn lattice(n: usize) -> Self {
        GroupModel::Lattice(lattice::LatticeGroup { dim: n })
    }

    pub fn free(rank: usize) -> Self {
        GroupModel::Free(free::FreeGroup { rank })
    }

    pub fn dihedral() -> Self {
        GroupModel::Dihedral(dihedral::DihedralGroup)
    }

    /// Resolve a backend by name: `Zn:k`, `free:k`, `dinf`, a builtin finite
    /// group (`z2`, `z2xz2`, `s3`, `d4`), or a path to a JSON table.
    pub fn by_name(name: &str) -> GResult<Self> {
        if let Some(k) = name.strip_prefix("Zn:") {
            let n: usize = k
                .parse()
                .map_err(|_| GroupError::BadInput(format!("bad rank in {name}")))?;
            if n == 0 || n > 4 {
                return Err(GroupError::BadInput("Zn rank must be 1..=4".into()));
            }
            return Ok(GroupModel::lattice(n));
        }
        if let Some(k) = name.strip_prefix("free:") {
            let n: usize = k
                .parse()
                .map_err(|_| GroupError::BadInput(format!("bad rank in {name}")))?;
            if n == 0 || n > 8 {
                return Err(GroupError::BadInput("free rank must be 1..=8".into()));
            }
            return Ok(GroupModel::free(n));
        }
        match name {
            "dinf" => Ok(GroupModel::dihedral()),
            "z2" => Ok(GroupModel::finite(finite::builtin_z2())),
            "z2xz2" => Ok(GroupModel::finite(finite::builtin_z2xz2())),
            "s3" => Ok(GroupModel::finite(finite::builtin_s3())),
            "d4" => Ok(GroupModel::finite(finite::builtin_d4())),
            path if std::path::Path::new(path).exists() => {
                Ok(GroupModel::finite(finite::from_json_file(path)?))
            }
            other => Err(GroupError::BadInput(format!("unknown group '{other}'"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupModel::Finite(g) => g.name.clone(),
            GroupModel::Lattice(g) => format!("Zn:{}", g.dim),
            GroupModel::Free(g) => format!("free:{}", g.rank),
            GroupModel::Dihedral(_) => "dinf".into(),
        }
    }

    pub fn case(&self) -> GeomCase {
        match self {
            GroupModel::Lattice(_) | GroupModel::Dihedral(_) => GeomCase::Flat,
            GroupModel::Finite(_) | GroupModel::Free(_) => GeomCase::Word,
        }
    }

    pub fn identity(&self) -> Elem {
        match self {
            GroupModel::Finite(_) => Elem::Finite(0),
            GroupModel::Lattice(g) => Elem::Lattice(vec![0; g.dim]),
            GroupModel::Free(_) => Elem::Free(vec![]),
            GroupModel::Dihedral(_) => Elem::Dihedral { t: 0, flip: false },
        }
    }

    pub fn is_identity(&self, a: &Elem) -> bool {
        *a == self.identity()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (GroupModel::Finite(g), Elem::Finite(x), Elem::Finite(y)) => {
                Elem::Finite(g.mul(*x, *y))
            }
            (GroupModel::Lattice(_), Elem::Lattice(x), Elem::Lattice(y)) => {
                Elem::Lattice(x.iter().zip(y).map(|(u, v)| u + v).collect())
            }
            (GroupModel::Free(_), Elem::Free(x), Elem::Free(y)) => {
                Elem::Free(free::concat_reduce(x, y))
            }
            (
                GroupModel::Dihedral(_),
                &Elem::Dihedral { t: t1, flip: f1 },
                &Elem::Dihedral { t: t2, flip: f2 },
            ) => dihedral::mul(t1, f1, t2, f2),
            _ => panic!("mixed group backends"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        match (self, a) {
            (GroupModel::Finite(g), Elem::Finite(x)) => Elem::Finite(g.inv(*x)),
            (GroupModel::Lattice(_), Elem::Lattice(x)) => {
                Elem::Lattice(x.iter().map(|u| -u).collect())
            }
            (GroupModel::Free(_), Elem::Free(x)) => {
                Elem::Free(x.iter().rev().map(|l| -l).collect())
            }
            (GroupModel::Dihedral(_), &Elem::Dihedral { t, flip }) => {
                if flip {
                    Elem::Dihedral { t, flip }
                } else {
                    Elem::Dihedral { t: -t, flip }
                }
            }
            _ => panic!("mixed group backends"),
        }
    }

    /// Conjugate `s^{-1} a s`.
    pub fn conj(&self, a: &Elem, s: &Elem) -> Elem {
        self.mul(&self.mul(&self.inv(s), a), s)
    }

    /// The proper left-invariant metric: orbit metric `d(g x, h x)` on the
    /// flat backends, word metric otherwise.
    pub fn dist(&self, a: &Elem, b: &Elem) -> Dist {
        match self {
            GroupModel::Finite(g) => {
                let d = g.word_dist(a, b);
                Dist::from_q(Q::from_integer(d.into()))
            }
            GroupModel::Lattice(g) => g.dist(a, b),
            GroupModel::Free(_) => {
                let w = self.mul(&self.inv(a), b);
                if let Elem::Free(v) = w {
                    Dist::from_q(Q::from_integer((v.len() as i64).into()))
                } else {
                    unreachable!()
                }
            }
            GroupModel::Dihedral(g) => g.dist(a, b),
        }
    }

    /// Word length used for shortlex canonical choices.
    pub fn shortlex_key(&self, a: &Elem) -> (u64, Vec<i64>) {
        match (self, a) {
            (GroupModel::Finite(g), Elem::Finite(x)) => g.shortlex_key(*x),
            (GroupModel::Lattice(_), Elem::Lattice(x)) => {
                let len: u64 = x.iter().map(|v| v.unsigned_abs()).sum();
                (len, x.clone())
            }
            (GroupModel::Free(_), Elem::Free(x)) => (
                x.len() as u64,
                x.iter().map(|&l| free::letter_rank(l)).collect(),
            ),
            (GroupModel::Dihedral(_), &Elem::Dihedral { t, flip }) => {
                let len = dihedral::word_len(t, flip);
                (len, vec![i64::from(flip), t])
            }
            _ => panic!("mixed group backends"),
        }
    }

    pub fn shortlex_min<'a, I: IntoIterator<Item = &'a Elem>>(&self, it: I) -> Option<Elem> {
        it.into_iter()
            .min_by(|a, b| self.cmp_shortlex(a, b))
            .cloned()
    }

    pub fn cmp_shortlex(&self, a: &Elem, b: &Elem) -> Ordering {
        self.shortlex_key(a).cmp(&self.shortlex_key(b))
    }

    /// Generators together with their inverses, in a fixed order.
    pub fn symmetric_generators(&self) -> Vec<Elem> {
        match self {
            GroupModel::Finite(g) => g.symmetric_generators(),
            GroupModel::Lattice(g) => g.symmetric_generators(),
            GroupModel::Free(g) => g.symmetric_generators(),
            GroupModel::Dihedral(_) => vec![
                Elem::Dihedral { t: 0, flip: true },
                Elem::Dihedral { t: 1, flip: true },
            ],
        }
    }

    /// All elements within metric distance `radius` of `center`. Finite for
    /// every backend (the metrics are proper).
    pub fn ball(&self, center: &Elem, radius: &Dist) -> Vec<Elem> {
        let mut out = match self {
            GroupModel::Finite(g) => g
                .all_elements()
                .into_iter()
                .filter(|h| self.dist(center, h) <= *radius)
                .collect::<Vec<_>>(),
            GroupModel::Lattice(g) => g.ball(center, radius),
            GroupModel::Free(g) => g.ball(center, radius),
            GroupModel::Dihedral(g) => g.ball(center, radius),
        };
        out.sort();
        out.dedup();
        out
    }

    /// Order of the element; `None` means infinite.
    pub fn order_of(&self, a: &Elem) -> Option<u64> {
        match (self, a) {
            (GroupModel::Finite(g), Elem::Finite(x)) => Some(g.order_of(*x)),
            (GroupModel::Lattice(_), Elem::Lattice(x)) => {
                if x.iter().all(|&v| v == 0) {
                    Some(1)
                } else {
                    None
                }
            }
            (GroupModel::Free(_), Elem::Free(x)) => {
                if x.is_empty() {
                    Some(1)
                } else {
                    None
                }
            }
            (GroupModel::Dihedral(_), &Elem::Dihedral { t, flip }) => {
                if flip {
                    Some(2)
                } else if t == 0 {
                    Some(1)
                } else {
                    None
                }
            }
            _ => panic!("mixed group backends"),
        }
    }

    pub fn is_torsion(&self, a: &Elem) -> bool {
        self.order_of(a).is_some()
    }

    /// Shortlex-minimal representative of the conjugacy class of `a`.
    pub fn class_rep(&self, a: &Elem) -> Elem {
        match self {
            GroupModel::Finite(g) => g.class_rep(a, self),
            GroupModel::Lattice(_) => a.clone(),
            GroupModel::Free(_) => free::class_rep(a),
            GroupModel::Dihedral(_) => dihedral::class_rep(a),
        }
    }

    pub fn same_class(&self, a: &Elem, b: &Elem) -> bool {
        self.class_rep(a) == self.class_rep(b)
    }

    pub fn centralizer_contains(&self, z: &Elem, v: &Elem) -> bool {
        self.mul(z, v) == self.mul(v, z)
    }

    /// One shortlex-minimal representative per conjugacy class of elements of
    /// finite order, identity first.
    pub fn torsion_class_reps(&self) -> Vec<Elem> {
        let mut reps = match self {
            GroupModel::Finite(g) => g.torsion_class_reps(self),
            GroupModel::Lattice(_) | GroupModel::Free(_) => vec![self.identity()],
            GroupModel::Dihedral(_) => vec![
                Elem::Dihedral { t: 0, flip: false },
                Elem::Dihedral { t: 0, flip: true },
                Elem::Dihedral { t: 1, flip: true },
            ],
        };
        reps.sort_by(|a, b| self.cmp_shortlex(a, b));
        reps
    }

    /// Some element `s` with `s^{-1} v s = w`, if `v` and `w` are conjugate.
    pub fn conjugating_element(&self, v: &Elem, w: &Elem) -> Option<Elem> {
        match self {
            GroupModel::Finite(g) => g
                .all_elements()
                .into_iter()
                .find(|s| self.conj(v, s) == *w),
            GroupModel::Lattice(_) => (v == w).then(|| self.identity()),
            GroupModel::Free(_) => free::conjugating_element(v, w),
            GroupModel::Dihedral(_) => dihedral::conjugating_element(v, w),
        }
    }

    /// A deterministic finite sample of the centralizer of `v`, suitable for
    /// equivariance tests. Contains the identity and non-trivial elements
    /// whenever they exist.
    pub fn centralizer_sample(&self, v: &Elem, radius: i64) -> Vec<Elem> {
        let r = Dist::from_q(Q::from_integer(radius.into()));
        let mut out: Vec<Elem> = self
            .ball(&self.identity(), &r)
            .into_iter()
            .filter(|z| self.centralizer_contains(z, v))
            .collect();
        out.sort_by(|a, b| self.cmp_shortlex(a, b));
        out
    }

    /// Hyperbolicity constant used in the word-metric growth bounds: 0 on
    /// trees, the diameter for finite groups.
    pub fn word_delta(&self) -> Option<u64> {
        match self {
            GroupModel::Free(_) => Some(0),
            GroupModel::Finite(g) => Some(g.diameter()),
            _ => None,
        }
    }

    /// Diameter of the fundamental domain of the flat backends.
    pub fn domain_diameter(&self) -> Option<Dist> {
        match self {
            GroupModel::Lattice(g) => Some(Dist::from_square(Q::from_integer((g.dim as i64).into()))),
            GroupModel::Dihedral(_) => Some(Dist::from_q(crate::num::qq(1, 2))),
            _ => None,
        }
    }

    /// Radius growth of one projection step: `2 diam(D)` in the flat case,
    /// `2 delta` in the word case.
    pub fn growth_pad(&self) -> Dist {
        match self {
            GroupModel::Lattice(_) | GroupModel::Dihedral(_) => {
                let d = self.domain_diameter().unwrap();
                d.scale(&crate::num::qi(2))
            }
            _ => {
                let delta = self.word_delta().unwrap_or(0);
                Dist::from_q(Q::from_integer(((2 * delta) as i64).into()))
            }
        }
    }

    /// Parse an element from text: a word in the generator alphabet, `e`, a
    /// lattice vector `(a,b,..)`, or `#k` for a finite table index.
    pub fn parse_elem(&self, s: &str) -> GResult<Elem> {
        let s = s.trim();
        if s == "e" {
            return Ok(self.identity());
        }
        match self {
            GroupModel::Lattice(g) => g.parse(s),
            GroupModel::Free(g) => g.parse(s),
            GroupModel::Dihedral(_) => dihedral::parse(s),
            GroupModel::Finite(g) => g.parse(s),
        }
    }

    pub fn display_elem(&self, a: &Elem) -> String {
        match (self, a) {
            (GroupModel::Finite(g), Elem::Finite(x)) => g.display(*x),
            (GroupModel::Lattice(_), Elem::Lattice(x)) => {
                let coords: Vec<String> = x.iter().map(|v| v.to_string()).collect();
                format!("({})", coords.join(","))
            }
            (GroupModel::Free(_), Elem::Free(x)) => free::display(x),
            (GroupModel::Dihedral(_), &Elem::Dihedral { t, flip }) => dihedral::display(t, flip),
            _ => panic!("mixed group backends"),
        }
    }

    /// Does the fundamental-domain translate `gD` meet the fixed set of `v`?
    /// Feeds the support condition of the class subcomplexes. On the word
    /// backends the subcomplex is carried by the centralizer instead.
    pub fn class_support_contains(&self, v: &Elem, g: &Elem) -> GResult<bool> {
        match self.case() {
            GeomCase::Flat => {
                let fixed = self.fixed_set(v)?;
                geometry::cell_meets_convex(self, g, &fixed)
            }
            GeomCase::Word => Ok(self.centralizer_contains(g, v)),
        }
    }

    pub fn fixed_set(&self, v: &Elem) -> GResult<ConvexSet> {
        geometry::fixed_set(self, v)
    }

    pub fn min_set(&self, v: &Elem) -> GResult<ConvexSet> {
        geometry::min_set(self, v)
    }

    /// Orbit point `g x` of the flat backends.
    pub fn orbit_point(&self, g: &Elem) -> GResult<ModelPoint> {
        geometry::orbit_point(self, g)
    }

    /// All `h` whose domain translate `hD` contains the model point.
    pub fn cell_reps(&self, p: &ModelPoint) -> GResult<Vec<Elem>> {
        geometry::cell_reps(self, p)
    }

    pub fn project_convex(&self, p: &ModelPoint, set: &ConvexSet) -> GResult<ModelPoint> {
        geometry::project_convex(self, p, set)
    }

    /// Stable length and normalized axis coordinate of an infinite-order
    /// element, anchored at `y`.
    pub fn min_split(&self, v: &Elem, y: &ModelPoint) -> GResult<(Dist, AxisCoord)> {
        geometry::min_split(self, v, y)
    }

    /// All elements of the finite backend, in table order.
    pub fn all_elements(&self) -> GResult<Vec<Elem>> {
        match self {
            GroupModel::Finite(g) => Ok(g.all_elements()),
            _ => Err(GroupError::Unsupported("element enumeration needs a finite group")),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupModel::Finite(_))
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exact lattice inner product.
pub(crate) fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
