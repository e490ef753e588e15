//! The configuration `D = F_2^4 ∪ K`: 16 points, 16 affine hyperplanes avoiding the
//! direction `a = 1111`, their incidence, the translation `t_a`, the involution `σ_D`,
//! and the symmetry groups `Q+` and `Q` as explicit permutation sets.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

/// Bit `k-1` holds the coordinate `x_k`.
pub type Bits = u8;

pub const A: Bits = 0b1111;

pub fn g(k: usize) -> Bits {
    1 << (k - 1)
}

pub fn dot(u: Bits, x: Bits) -> u8 {
    ((u & x).count_ones() % 2) as u8
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum Vertex {
    Point(Bits),
    /// `{x : u·x = eps}` with `u` of odd weight.
    Hplane { u: Bits, eps: u8 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum EdgeKind {
    Solid,
    Dotted,
    None,
}

/// Canonical order: a, b1–4, c1–4, d1–4, e12 e13 e14 e23 e24 e34, f1–4, g1–4, h1–4, z.
pub const LABELS: [&str; 32] = [
    "a", "b1", "b2", "b3", "b4", "c1", "c2", "c3", "c4", "d1", "d2", "d3", "d4", "e12", "e13", "e14", "e23", "e24",
    "e34", "f1", "f2", "f3", "f4", "g1", "g2", "g3", "g4", "h1", "h2", "h3", "h4", "z",
];

impl Vertex {
    pub fn from_label(s: &str) -> Option<Vertex> {
        let digit = |i: usize| -> Option<usize> {
            let d = s.as_bytes().get(i)?.checked_sub(b'0')? as usize;
            (1..=4).contains(&d).then_some(d)
        };
        let v = match s.as_bytes().first()? {
            b'a' if s.len() == 1 => Vertex::Point(A),
            b'z' if s.len() == 1 => Vertex::Point(0),
            b'c' if s.len() == 2 => Vertex::Point(A ^ g(digit(1)?)),
            b'g' if s.len() == 2 => Vertex::Point(g(digit(1)?)),
            b'e' if s.len() == 3 => {
                let (i, j) = (digit(1)?, digit(2)?);
                if i >= j {
                    return None;
                }
                Vertex::Point(A ^ g(i) ^ g(j))
            }
            b'd' if s.len() == 2 => Vertex::Hplane { u: g(digit(1)?), eps: 0 },
            b'h' if s.len() == 2 => Vertex::Hplane { u: g(digit(1)?), eps: 1 },
            b'f' if s.len() == 2 => Vertex::Hplane { u: A ^ g(digit(1)?), eps: 0 },
            b'b' if s.len() == 2 => Vertex::Hplane { u: A ^ g(digit(1)?), eps: 1 },
            _ => return None,
        };
        Some(v)
    }

    pub fn label(&self) -> &'static str {
        LABELS[self.index()]
    }

    /// Position in the canonical order, `0..32`.
    pub fn index(&self) -> usize {
        match *self {
            Vertex::Point(x) => match x.count_ones() {
                4 => 0,
                3 => 5 + (A ^ x).trailing_zeros() as usize,
                2 => {
                    let m = A ^ x;
                    let i = m.trailing_zeros() as usize + 1;
                    let j = 8 - (m.leading_zeros() as usize);
                    13 + [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)].iter().position(|&p| p == (i, j)).unwrap()
                }
                1 => 23 + x.trailing_zeros() as usize,
                _ => 31,
            },
            Vertex::Hplane { u, eps } => {
                let k = if u.count_ones() == 1 { u.trailing_zeros() } else { (A ^ u).trailing_zeros() } as usize;
                match (u.count_ones(), eps) {
                    (3, 1) => 1 + k,
                    (1, 0) => 9 + k,
                    (3, 0) => 19 + k,
                    _ => 27 + k,
                }
            }
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, Vertex::Point(_))
    }
}

/// All 32 vertices in canonical order.
pub fn vertices() -> Vec<Vertex> {
    LABELS.iter().map(|l| Vertex::from_label(l).unwrap()).collect()
}

pub fn points() -> Vec<Vertex> {
    vertices().into_iter().filter(|v| v.is_point()).collect()
}

pub fn hyperplanes() -> Vec<Vertex> {
    vertices().into_iter().filter(|v| !v.is_point()).collect()
}

/// Whether the point lies on the hyperplane; `false` unless given one of each.
pub fn incident(pt: Vertex, h: Vertex) -> bool {
    match (pt, h) {
        (Vertex::Point(x), Vertex::Hplane { u, eps }) => dot(u, x) == eps,
        _ => false,
    }
}

pub fn t_translate(w: Bits, v: Vertex) -> Vertex {
    match v {
        Vertex::Point(x) => Vertex::Point(x ^ w),
        Vertex::Hplane { u, eps } => Vertex::Hplane { u, eps: eps ^ dot(u, w) },
    }
}

fn sigma_k(u: Bits, eps: u8) -> Bits {
    let u4 = (u >> 3) & 1;
    ((u & 0b0111) | 0b1000) ^ if (u4 ^ eps) == 1 { A } else { 0 }
}

/// The incidence-reversing involution exchanging points and hyperplanes.
pub fn sigma_d(v: Vertex) -> Vertex {
    match v {
        Vertex::Hplane { u, eps } => Vertex::Point(sigma_k(u, eps)),
        Vertex::Point(x) => hyperplanes()
            .into_iter()
            .find(|h| matches!(*h, Vertex::Hplane { u, eps } if sigma_k(u, eps) == x))
            .expect("σ_K is a bijection"),
    }
}

pub fn edge_kind(u: Vertex, v: Vertex) -> EdgeKind {
    assert_ne!(u, v, "edge_kind of a vertex with itself");
    if incident(u, v) || incident(v, u) {
        EdgeKind::Solid
    } else if t_translate(A, u) == v {
        EdgeKind::Dotted
    } else {
        EdgeKind::None
    }
}

/// A permutation of the 32 vertices by canonical index: `p[i]` is the image of vertex `i`.
pub type Perm = [u8; 32];

pub fn identity_perm() -> Perm {
    std::array::from_fn(|i| i as u8)
}

/// `f ∘ g`.
pub fn compose(f: &Perm, g: &Perm) -> Perm {
    std::array::from_fn(|i| f[g[i] as usize])
}

pub fn invert(f: &Perm) -> Perm {
    let mut out = [0u8; 32];
    for (i, &j) in f.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

pub fn perm_of(f: impl Fn(Vertex) -> Vertex) -> Perm {
    let vs = vertices();
    std::array::from_fn(|i| f(vs[i]).index() as u8)
}

/// Extends an affine bijection of `F_2^4` to `D`, sending each hyperplane to the
/// hyperplane spanned by the image of its points. Panics if the image leaves `K`.
pub fn perm_from_point_map(f: impl Fn(Bits) -> Bits) -> Perm {
    let image_of_h = |u: Bits, eps: u8| -> Vertex {
        let img: Vec<Bits> = (0..16u8).filter(|&x| dot(u, x) == eps).map(&f).collect();
        hyperplanes()
            .into_iter()
            .find(|h| matches!(*h, Vertex::Hplane { u: u2, eps: e2 } if img.iter().all(|&y| dot(u2, y) == e2)))
            .expect("affine image of a hyperplane in K stays in K")
    };
    perm_of(|v| match v {
        Vertex::Point(x) => Vertex::Point(f(x)),
        Vertex::Hplane { u, eps } => image_of_h(u, eps),
    })
}

/// Transvection `x ↦ x + (f·x)v`; fixes `a` when `f·a = 0`.
pub fn transvection(f: Bits, v: Bits) -> impl Fn(Bits) -> Bits {
    move |x| if dot(f, x) == 1 { x ^ v } else { x }
}

/// Explicit permutation group.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub generators: Vec<Perm>,
    pub elements: HashSet<Perm>,
}

impl PermGroup {
    pub fn generate(generators: Vec<Perm>) -> Self {
        let id = identity_perm();
        let mut elements = HashSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = compose(s, &x);
                if elements.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        PermGroup { generators, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.contains(p)
    }

    /// Orbits of the vertex set, each sorted, listed by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; 32];
        let mut out = Vec::new();
        for start in 0..32 {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for s in &self.generators {
                    let y = s[x] as usize;
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Closure of all commutators under conjugation.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut gens: HashSet<Perm> = HashSet::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = compose(&compose(a, b), &compose(&invert(a), &invert(b)));
                gens.insert(c);
            }
        }
        let mut h = PermGroup::generate(gens.iter().copied().collect());
        // normal closure: keep adding conjugates until stable
        loop {
            let mut extra = Vec::new();
            for x in &h.generators {
                for s in &self.generators {
                    let y = compose(&compose(s, x), &invert(s));
                    if !h.contains(&y) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                return h;
            }
            let mut g = h.generators.clone();
            g.extend(extra);
            h = PermGroup::generate(g);
        }
    }
}

/// Generators of `Q+`: the translations `t_{g_k}` and the transvections fixing `a`
/// (these include the coordinate transpositions of `S4`).
pub fn qplus_generators() -> Vec<Perm> {
    let mut gens: Vec<Perm> = (1..=4).map(|k| perm_of(|v| t_translate(g(k), v))).collect();
    for f in 1..16u8 {
        if dot(f, A) != 0 {
            continue;
        }
        for v in 1..16u8 {
            if dot(f, v) == 0 {
                gens.push(perm_from_point_map(transvection(f, v)));
            }
        }
    }
    gens
}

pub fn sigma_perm() -> Perm {
    perm_of(sigma_d)
}

pub fn group_qplus() -> PermGroup {
    PermGroup::generate(qplus_generators())
}

pub fn group_q() -> PermGroup {
    let mut gens = qplus_generators();
    gens.push(sigma_perm());
    PermGroup::generate(gens)
}

/// Coordinate permutation `π ∈ S4` acting on `D` (copy `k` goes to copy `π(k)`).
pub fn s4_perm(pi: [usize; 4]) -> Perm {
    perm_from_point_map(move |x| {
        let mut y = 0;
        for k in 0..4 {
            if x & (1 << k) != 0 {
                y |= 1 << pi[k];
            }
        }
        y
    })
}

pub fn s4_elements() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|k| p.contains(&k)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[derive(Serialize)]
struct DiagramJson {
    vertices: Vec<&'static str>,
    solid: Vec<(&'static str, &'static str)>,
    dotted: Vec<(&'static str, &'static str)>,
}

fn edges(kind: EdgeKind) -> Vec<(Vertex, Vertex)> {
    let vs = vertices();
    let mut out = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if edge_kind(u, v) == kind {
                out.push((u, v));
            }
        }
    }
    out
}

/// Graphviz rendering; solid edges point from hyperplane to incident point.
pub fn diagram_dot() -> String {
    let mut s = String::from("graph D {\n  node [shape=circle];\n");
    for v in vertices() {
        let shape = if v.is_point() { "circle" } else { "box" };
        let _ = writeln!(s, "  {} [shape={shape}];", v.label());
    }
    for (u, v) in edges(EdgeKind::Solid) {
        let _ = writeln!(s, "  {} -- {};", u.label(), v.label());
    }
    for (u, v) in edges(EdgeKind::Dotted) {
        let _ = writeln!(s, "  {} -- {} [style=dotted];", u.label(), v.label());
    }
    s.push_str("}\n");
    s
}

pub fn diagram_json() -> serde_json::Value {
    let pair = |(u, v): (Vertex, Vertex)| (u.label(), v.label());
    serde_json::to_value(DiagramJson {
        vertices: LABELS.to_vec(),
        solid: edges(EdgeKind::Solid).into_iter().map(pair).collect(),
        dotted: edges(EdgeKind::Dotted).into_iter().map(pair).collect(),
    })
    .expect("diagram serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        Vertex::from_label(s).unwrap()
    }

    #[test]
    fn labels_roundtrip() {
        for (i, l) in LABELS.iter().enumerate() {
            assert_eq!(v(l).index(), i);
            assert_eq!(v(l).label(), *l);
        }
        assert_eq!(points().len(), 16);
        assert_eq!(hyperplanes().len(), 16);
        for h in hyperplanes() {
            let Vertex::Hplane { u, .. } = h else { unreachable!() };
            assert_eq!(dot(u, A), 1);
        }
    }

    #[test]
    fn incidence_examples() {
        assert!(!incident(v("a"), v("d1")));
        assert!(incident(v("z"), v("d1")));
        for p in points() {
            assert_eq!(hyperplanes().iter().filter(|&&h| incident(p, h)).count(), 8);
        }
        for h in hyperplanes() {
            assert_eq!(points().iter().filter(|&&p| incident(p, h)).count(), 8);
        }
    }

    #[test]
    fn translations() {
        assert_eq!(t_translate(A, v("z")), v("a"));
        for k in 1..=4 {
            assert_eq!(t_translate(A, v(&format!("d{k}"))), v(&format!("h{k}")));
        }
        for w in 0..16 {
            for x in vertices() {
                assert_eq!(t_translate(w, t_translate(w, x)), x);
            }
        }
    }

    #[test]
    fn sigma_properties() {
        for x in vertices() {
            assert_eq!(sigma_d(sigma_d(x)), x);
            assert_ne!(sigma_d(x).is_point(), x.is_point());
            assert_eq!(sigma_d(t_translate(A, x)), t_translate(A, sigma_d(x)));
        }
        for p in points() {
            for h in hyperplanes() {
                assert_eq!(incident(p, h), incident(sigma_d(h), sigma_d(p)));
            }
        }
    }

    #[test]
    fn edge_kinds() {
        assert_eq!(edge_kind(v("a"), v("b1")), EdgeKind::Solid);
        assert_eq!(edge_kind(v("a"), v("z")), EdgeKind::Dotted);
        assert_eq!(edge_kind(v("c1"), v("c2")), EdgeKind::None);
        let vs = vertices();
        for &x in &vs {
            let dotted = vs.iter().filter(|&&y| y != x && edge_kind(x, y) == EdgeKind::Dotted).count();
            assert_eq!(dotted, 1);
            let solid = vs.iter().filter(|&&y| y != x && edge_kind(x, y) == EdgeKind::Solid).count();
            assert_eq!(solid, 8);
            for &y in &vs {
                if x != y {
                    assert_eq!(edge_kind(x, y), edge_kind(y, x));
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        let qp = group_qplus();
        assert_eq!(qp.order(), 21504);
        assert_eq!(qp.orbits().len(), 2);
        assert!(qp.orbits().iter().all(|o| o.len() == 16));
        let q = group_q();
        assert_eq!(q.order(), 43008);
        assert!(q.is_transitive());
        for s in &q.generators {
            for x in vertices() {
                for y in vertices() {
                    if x != y {
                        let (gx, gy) = (vertices()[s[x.index()] as usize], vertices()[s[y.index()] as usize]);
                        assert_eq!(edge_kind(x, y), edge_kind(gx, gy));
                    }
                }
            }
        }
    }

    #[test]
    fn s4_relabels_indices() {
        let pi = [1, 2, 3, 0];
        let p = s4_perm(pi);
        assert_eq!(p[v("c1").index()] as usize, v("c2").index());
        assert_eq!(p[v("e12").index()] as usize, v("e23").index());
        assert_eq!(p[v("h4").index()] as usize, v("h1").index());
        assert!(group_qplus().contains(&p));
    }

    #[test]
    fn dot_export_mentions_every_vertex() {
        let d = diagram_dot();
        for l in LABELS {
            assert!(d.contains(&format!("  {l} [")));
        }
        assert_eq!(d.matches("style=dotted").count(), 16);
        assert_eq!(d.matches(" -- ").count(), 16 + 128);
    }
}
