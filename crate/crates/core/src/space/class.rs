use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::MetricSpace;

/// A distance multiset, stored sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle([u8; 3]);

impl Triangle {
    pub fn new(a: u8, b: u8, c: u8) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable();
        Triangle(t)
    }

    pub fn sides(self) -> [u8; 3] {
        self.0
    }

    pub fn perimeter(self) -> u8 {
        self.0.iter().sum()
    }

    /// Whether the sides satisfy the triangle inequality.
    pub fn is_metric(self) -> bool {
        let [a, b, c] = self.0;
        c <= a + b
    }

    #[inline]
    fn mask_bit(self) -> u64 {
        let [a, b, c] = self.0;
        1 << (a as u64 * 16 + b as u64 * 4 + c as u64)
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

/// The two classes studied here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassId {
    /// A³(∞,0,7,8): triangles (1,1,2), (1,2,3), (2,2,2).
    #[serde(rename = "a1")]
    A1,
    /// A³(∞,0,7,10): additionally (2,3,3).
    #[serde(rename = "a2")]
    A2,
}

impl ClassId {
    pub const ALL: [ClassId; 2] = [ClassId::A1, ClassId::A2];

    pub fn spec(self) -> &'static ClassSpec {
        match self {
            ClassId::A1 => &A1_SPEC,
            ClassId::A2 => &A2_SPEC,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassId::A1 => "a1",
            ClassId::A2 => "a2",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(ClassId::A1),
            "a2" => Ok(ClassId::A2),
            other => Err(format!("unknown class {other:?}, expected a1 or a2")),
        }
    }
}

/// The five parameters `(δ, K1, K2, C, C′)` naming a generic-type class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassParams {
    pub delta: u8,
    /// `None` stands for ∞.
    pub k1: Option<u8>,
    pub k2: u8,
    pub c: u8,
    pub c_prime: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassSpec {
    pub id: ClassId,
    pub allowed_triangles: &'static [Triangle],
    pub params: ClassParams,
    mask: u64,
}

const A1_TRIANGLES: [Triangle; 3] = [Triangle([1, 1, 2]), Triangle([1, 2, 3]), Triangle([2, 2, 2])];
const A2_TRIANGLES: [Triangle; 4] =
    [Triangle([1, 1, 2]), Triangle([1, 2, 3]), Triangle([2, 2, 2]), Triangle([2, 3, 3])];

const fn mask_of(ts: &[Triangle]) -> u64 {
    let mut mask = 0u64;
    let mut i = 0;
    while i < ts.len() {
        let [a, b, c] = ts[i].0;
        mask |= 1 << (a as u64 * 16 + b as u64 * 4 + c as u64);
        i += 1;
    }
    mask
}

static A1_SPEC: ClassSpec = ClassSpec {
    id: ClassId::A1,
    allowed_triangles: &A1_TRIANGLES,
    params: ClassParams { delta: 3, k1: None, k2: 0, c: 7, c_prime: 8 },
    mask: mask_of(&A1_TRIANGLES),
};

static A2_SPEC: ClassSpec = ClassSpec {
    id: ClassId::A2,
    allowed_triangles: &A2_TRIANGLES,
    params: ClassParams { delta: 3, k1: None, k2: 0, c: 7, c_prime: 10 },
    mask: mask_of(&A2_TRIANGLES),
};

impl ClassSpec {
    #[inline]
    pub fn allows(&self, t: Triangle) -> bool {
        self.mask & t.mask_bit() != 0
    }

    #[inline]
    pub(crate) fn allows_sides(&self, a: u8, b: u8, c: u8) -> bool {
        self.allows(Triangle::new(a, b, c))
    }
}

/// A triple of vertices realizing a triangle outside the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForbiddenTriple {
    pub vertices: [usize; 3],
    pub triangle: Triangle,
}

impl fmt::Display for ForbiddenTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k] = self.vertices;
        write!(f, "vertices ({i},{j},{k}) realize forbidden triangle {}", self.triangle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    Forbidden(ForbiddenTriple),
}

impl Membership {
    pub fn is_member(self) -> bool {
        matches!(self, Membership::Member)
    }

    pub fn witness(self) -> Option<ForbiddenTriple> {
        match self {
            Membership::Member => None,
            Membership::Forbidden(w) => Some(w),
        }
    }
}

/// Checks every 3-subset against the class's triangle catalog.
///
/// On failure the lexicographically first offending triple `i < j < k` is
/// reported.
pub fn validate(space: &MetricSpace, class: ClassId) -> Membership {
    let spec = class.spec();
    let n = space.n();
    for i in 0..n {
        for j in i + 1..n {
            let dij = space.get(i, j);
            for k in j + 1..n {
                let t = Triangle::new(dij, space.get(i, k), space.get(j, k));
                if !spec.allows(t) {
                    return Membership::Forbidden(ForbiddenTriple { vertices: [i, j, k], triangle: t });
                }
            }
        }
    }
    Membership::Member
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: u8, b: u8, c: u8) -> MetricSpace {
        MetricSpace::from_upper(3, &[a, b, c]).unwrap()
    }

    #[test]
    fn catalogs() {
        let a1: Vec<_> = A1_SPEC.allowed_triangles.to_vec();
        assert_eq!(a1, vec![Triangle::new(1, 1, 2), Triangle::new(1, 2, 3), Triangle::new(2, 2, 2)]);
        assert!(A2_SPEC.allowed_triangles.iter().all(|t| t.perimeter() % 2 == 0 && t.is_metric()));
        for t in A1_SPEC.allowed_triangles {
            assert!(A2_SPEC.allows(*t));
        }
        assert!(A2_SPEC.allows(Triangle::new(3, 2, 3)));
        assert!(!A1_SPEC.allows(Triangle::new(3, 2, 3)));
        assert_eq!(A1_SPEC.params.c_prime, 8);
        assert_eq!(A2_SPEC.params.c_prime, 10);
    }

    #[test]
    fn triangle_examples() {
        assert!(validate(&tri(1, 2, 3), ClassId::A1).is_member());
        assert!(!validate(&tri(2, 3, 3), ClassId::A1).is_member());
        assert!(validate(&tri(2, 3, 3), ClassId::A2).is_member());
        for class in ClassId::ALL {
            let v = validate(&tri(1, 1, 1), class);
            assert_eq!(v.witness().unwrap().vertices, [0, 1, 2]);
            assert!(!validate(&tri(1, 1, 3), class).is_member());
            assert!(validate(&MetricSpace::uniform(1, 2).unwrap(), class).is_member());
            assert!(validate(&MetricSpace::empty(), class).is_member());
        }
    }

    #[test]
    fn first_witness_is_lexicographic() {
        // (0,1,2) is (2,2,2); (0,1,3) is the first bad triple.
        let s = MetricSpace::from_rows(&[[0, 2, 2, 2], [2, 0, 2, 1], [2, 2, 0, 1], [2, 1, 1, 0]]).unwrap();
        let w = validate(&s, ClassId::A1).witness().unwrap();
        assert_eq!(w.vertices, [0, 1, 3]);
        assert_eq!(w.triangle, Triangle::new(1, 2, 2));
    }

    #[test]
    fn class_id_parsing() {
        assert_eq!("A2".parse::<ClassId>().unwrap(), ClassId::A2);
        assert!("a3".parse::<ClassId>().is_err());
    }
}
