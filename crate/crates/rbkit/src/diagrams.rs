//! Rook-Brauer diagrams and their exact arithmetic.
//!
//! A diagram on k columns is a partial matching of 2k vertices arranged in a
//! top row t1..tk and a bottom row b1..bk. Every vertex lies on at most one
//! edge; unmatched vertices are isolated. Stacking d1 on top of d2 and
//! tracing the glued middle row yields a third diagram together with the
//! number of closed middle loops (each worth a factor x) and the number of
//! stranded middle components (each worth a factor y, fixed to 1 here).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::RbError;

/// Widest diagram the crate will construct. Wide enough for every worked
/// example while keeping vertex indices comfortably inside u16.
pub const MAX_K: usize = 64;

/// Default width bound for full enumeration (140_152 diagrams at k = 6).
pub const DEFAULT_ENUMERATE_BOUND: usize = 6;

/// A rook-Brauer diagram: a partial matching of {t1..tk, b1..bk}.
///
/// Internally vertex v in 0..2k is t(v+1) for v < k and b(v-k+1) otherwise;
/// `pairing[v]` holds the partner of v, if any. The representation is
/// canonical (no two distinct pairings describe the same diagram).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    k: usize,
    pairing: Vec<Option<u16>>,
}

/// Result of stacking two diagrams: the traced diagram plus the middle-row
/// bookkeeping. `loops` counts closed middle cycles (factor x each);
/// `isolated` counts middle components that touch neither boundary and are
/// not cycles (factor y each, with y = 1 throughout this crate).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductResult {
    pub diagram: Diagram,
    pub loops: u32,
    pub isolated: u32,
}

/// One generator letter: 1-indexed positions, so `S(1)` crosses columns 1,2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    /// Adjacent transposition s_i (crossing at columns i, i+1).
    S(usize),
    /// Cup-over-cap t_i (horizontal arcs at columns i, i+1 in both rows).
    T(usize),
    /// Deleted strand p_i (column i isolated in both rows).
    P(usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S(i) => write!(f, "s{i}"),
            Letter::T(i) => write!(f, "t{i}"),
            Letter::P(i) => write!(f, "p{i}"),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// A word in the generators, together with the power of x produced when the
/// word is multiplied out (loops closed during evaluation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorWord {
    pub k: usize,
    pub letters: Vec<Letter>,
    pub loop_power: u32,
}

/// Families a diagram can belong to, by structural criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Perfect matching: no isolated vertices.
    Brauer,
    /// Permutation: every edge vertical (rank k).
    Symmetric,
    /// No horizontal edges (partial permutation).
    RookMonoid,
    /// Perfect matching and planar.
    TemperleyLieb,
    /// Planar (no crossings after unfolding).
    Motzkin,
    /// No horizontal edges and planar.
    PlanarRookMonoid,
}

impl Diagram {
    /// The empty diagram (all 2k vertices isolated).
    pub fn empty(k: usize) -> Self {
        assert!(k <= MAX_K, "k exceeds MAX_K");
        Diagram {
            k,
            pairing: vec![None; 2 * k],
        }
    }

    /// The identity diagram (ti joined to bi for every column).
    pub fn identity(k: usize) -> Self {
        let mut d = Diagram::empty(k);
        for i in 0..k {
            d.pairing[i] = Some((k + i) as u16);
            d.pairing[k + i] = Some(i as u16);
        }
        d
    }

    /// Builds a diagram from edges over vertex indices in 0..2k
    /// (0..k is the top row, k..2k the bottom row).
    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Result<Self, RbError> {
        if k > MAX_K {
            return Err(RbError::BoundExceeded {
                what: "diagram width k",
                requested: k,
                limit: MAX_K,
            });
        }
        let mut d = Diagram::empty(k);
        for &(a, b) in edges {
            if a >= 2 * k {
                return Err(RbError::InvalidVertex {
                    vertex: vertex_name(k, a),
                    k,
                });
            }
            if b >= 2 * k {
                return Err(RbError::InvalidVertex {
                    vertex: vertex_name(k, b),
                    k,
                });
            }
            if a == b {
                return Err(RbError::SelfLoop {
                    vertex: vertex_name(k, a),
                });
            }
            for v in [a, b] {
                if d.pairing[v].is_some() {
                    return Err(RbError::DuplicateVertex {
                        vertex: vertex_name(k, v),
                    });
                }
            }
            d.pairing[a] = Some(b as u16);
            d.pairing[b] = Some(a as u16);
        }
        Ok(d)
    }

    /// The generator s_i (1 <= i < k): columns i and i+1 crossed.
    pub fn s(k: usize, i: usize) -> Self {
        assert!((1..k).contains(&i), "s_i needs 1 <= i < k");
        let mut d = Diagram::identity(k);
        let (a, b) = (i - 1, i);
        d.pairing[a] = Some((k + b) as u16);
        d.pairing[k + b] = Some(a as u16);
        d.pairing[b] = Some((k + a) as u16);
        d.pairing[k + a] = Some(b as u16);
        d
    }

    /// The generator t_i (1 <= i < k): horizontal arcs (ti, ti+1) and
    /// (bi, bi+1), all other columns vertical.
    pub fn t(k: usize, i: usize) -> Self {
        assert!((1..k).contains(&i), "t_i needs 1 <= i < k");
        let mut d = Diagram::identity(k);
        let (a, b) = (i - 1, i);
        d.pairing[a] = Some(b as u16);
        d.pairing[b] = Some(a as u16);
        d.pairing[k + a] = Some((k + b) as u16);
        d.pairing[k + b] = Some((k + a) as u16);
        d
    }

    /// The generator p_i (1 <= i <= k): column i isolated in both rows.
    pub fn p(k: usize, i: usize) -> Self {
        assert!((1..=k).contains(&i), "p_i needs 1 <= i <= k");
        let mut d = Diagram::identity(k);
        d.pairing[i - 1] = None;
        d.pairing[k + i - 1] = None;
        d
    }

    /// Builds the diagram of a permutation: top a joined to bottom perm[a].
    pub fn permutation(perm: &[usize]) -> Self {
        let k = perm.len();
        let mut d = Diagram::empty(k);
        for (a, &b) in perm.iter().enumerate() {
            d.pairing[a] = Some((k + b) as u16);
            d.pairing[k + b] = Some(a as u16);
        }
        debug_assert_eq!(d.rank(), k, "not a permutation");
        d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Partner of vertex v, if matched.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairing[v].map(|u| u as usize)
    }

    /// Edges as (min, max) vertex pairs, sorted: the canonical encoding.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..2 * self.k {
            if let Some(u) = self.pairing[v] {
                let u = u as usize;
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    /// Number of vertical edges (top-to-bottom). Never increases under
    /// multiplication.
    pub fn rank(&self) -> usize {
        (0..self.k)
            .filter(|&v| matches!(self.pairing[v], Some(u) if (u as usize) >= self.k))
            .count()
    }

    /// Isolated vertices, as indices.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..2 * self.k)
            .filter(|&v| self.pairing[v].is_none())
            .collect()
    }

    /// True if no two edges cross when the diagram is unfolded onto one row
    /// (top left-to-right, then bottom right-to-left).
    pub fn is_planar(&self) -> bool {
        let pos = |v: usize| if v < self.k { v } else { 2 * self.k - 1 - (v - self.k) };
        let arcs: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (pos(a), pos(b));
                (x.min(y), x.max(y))
            })
            .collect();
        for (idx, &(a, b)) in arcs.iter().enumerate() {
            for &(c, d) in &arcs[idx + 1..] {
                let (a, b, c, d) = if a < c { (a, b, c, d) } else { (c, d, a, b) };
                if a < c && c < b && b < d {
                    return false;
                }
            }
        }
        true
    }

    /// All families this diagram belongs to.
    pub fn classify(&self) -> BTreeSet<Family> {
        let mut fams = BTreeSet::new();
        let no_isolated = self.pairing.iter().all(|p| p.is_some());
        let no_horizontal = self.edges().iter().all(|&(a, _)| {
            // an edge sorted as (min, max) is vertical iff min is on top
            // and max on the bottom, which for sorted pairs means min < k <= max
            a < self.k
        });
        let planar = self.is_planar();
        if no_isolated {
            fams.insert(Family::Brauer);
        }
        if self.rank() == self.k {
            fams.insert(Family::Symmetric);
        }
        if no_horizontal {
            fams.insert(Family::RookMonoid);
        }
        if planar {
            fams.insert(Family::Motzkin);
            if no_isolated {
                fams.insert(Family::TemperleyLieb);
            }
            if no_horizontal {
                fams.insert(Family::PlanarRookMonoid);
            }
        }
        fams
    }

    /// Stacks `self` on top of `other`, traces the middle row, and returns
    /// the resulting diagram with its loop and stranded-component counts.
    pub fn concatenate(&self, other: &Diagram) -> Result<ProductResult, RbError> {
        if self.k != other.k {
            return Err(RbError::KMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let k = self.k;
        let mut result = Diagram::empty(k);
        // visited[m]: middle vertex m already consumed by a boundary chain
        let mut visited = vec![false; k];

        // Walks from a middle vertex away from the boundary, alternating
        // rows, and reports where the chain ends:
        //   Some(v) with v < k   -> top boundary vertex v of the result
        //   Some(v) with v >= k  -> bottom boundary vertex v - k
        //   None                 -> dead end (stranded side)
        // `from_above` says whether we entered m through self's bottom row.
        let walk = |mut m: usize, mut from_above: bool, visited: &mut Vec<bool>| -> Option<usize> {
            loop {
                visited[m] = true;
                let link = if from_above {
                    // continue downward through other's top row
                    other.pairing[m].map(|u| u as usize)
                } else {
                    // continue upward through self's bottom row
                    self.pairing[k + m].map(|u| u as usize)
                };
                let u = link?;
                if from_above {
                    if u >= k {
                        return Some(k + (u - k)); // other's bottom: boundary
                    }
                    m = u; // other's top arc: entered from below next
                    from_above = false;
                } else {
                    if u < k {
                        return Some(u); // self's top: boundary
                    }
                    m = u - k; // self's bottom arc: entered from above next
                    from_above = true;
                }
            }
        };

        let connect = |res: &mut Diagram, a: usize, b: usize| {
            res.pairing[a] = Some(b as u16);
            res.pairing[b] = Some(a as u16);
        };

        // Chains anchored at the top boundary (self's top row).
        for v in 0..k {
            match self.pairing[v].map(|u| u as usize) {
                None => {}
                Some(u) if u < k => {
                    if v < u {
                        connect(&mut result, v, u);
                    }
                }
                Some(u) => {
                    if let Some(end) = walk(u - k, true, &mut visited) {
                        if end >= k || v < end {
                            connect(&mut result, v, end);
                        }
                    }
                }
            }
        }
        // Chains anchored at the bottom boundary (other's bottom row).
        for v in 0..k {
            match other.pairing[k + v].map(|u| u as usize) {
                None => {}
                Some(u) if u >= k => {
                    if v < u - k {
                        connect(&mut result, k + v, k + (u - k));
                    }
                }
                Some(u) => {
                    if let Some(end) = walk(u, false, &mut visited) {
                        // a top endpoint was already connected in the first pass
                        if end >= k && end - k < v {
                            connect(&mut result, end, k + v);
                        } else if end >= k && end - k == v {
                            unreachable!("chain cannot return to its anchor");
                        }
                    }
                }
            }
        }

        // Remaining middle components never touch a boundary: cycles count
        // as loops, open paths (including single stranded vertices) as
        // isolated components.
        let mut loops = 0u32;
        let mut isolated = 0u32;
        for start in 0..k {
            if visited[start] {
                continue;
            }
            let mut cycle = true;
            let mut stack = vec![start];
            visited[start] = true;
            while let Some(m) = stack.pop() {
                let above = self.pairing[k + m].map(|u| u as usize);
                let below = other.pairing[m].map(|u| u as usize);
                if above.is_none() || below.is_none() {
                    cycle = false;
                }
                for next in [above, below].into_iter().flatten() {
                    // links in an untouched component stay inside the middle
                    let m2 = if next >= k { next - k } else { next };
                    if !visited[m2] {
                        visited[m2] = true;
                        stack.push(m2);
                    }
                }
            }
            if cycle {
                loops += 1;
            } else {
                isolated += 1;
            }
        }

        Ok(ProductResult {
            diagram: result,
            loops,
            isolated,
        })
    }

    /// Writes the diagram as a product of generator letters. The returned
    /// word always evaluates back to the diagram with loop_power 0.
    pub fn factor(&self) -> GeneratorWord {
        let k = self.k;
        let mut top_arcs = Vec::new(); // (a, b), a < b < k
        let mut bot_arcs = Vec::new(); // (a, b) as 0-based column indices
        let mut verticals = Vec::new(); // (top, bottom column)
        let mut top_iso = Vec::new();
        let mut bot_iso = Vec::new();
        for v in 0..k {
            match self.pairing[v].map(|u| u as usize) {
                None => top_iso.push(v),
                Some(u) if u < k => {
                    if v < u {
                        top_arcs.push((v, u));
                    }
                }
                Some(u) => verticals.push((v, u - k)),
            }
            match self.pairing[k + v].map(|u| u as usize) {
                None => bot_iso.push(v),
                Some(u) if u >= k && v < u - k => bot_arcs.push((v, u - k)),
                _ => {}
            }
        }
        let r = verticals.len();

        // sigma sends the top structure to standard position: verticals to
        // columns 0..r, arc pairs to (r+2j, r+2j+1), isolated to the tail.
        let mut sigma = vec![0usize; k];
        for (i, &(u, _)) in verticals.iter().enumerate() {
            sigma[u] = i;
        }
        for (j, &(a, b)) in top_arcs.iter().enumerate() {
            sigma[a] = r + 2 * j;
            sigma[b] = r + 2 * j + 1;
        }
        for (t, &v) in top_iso.iter().enumerate() {
            sigma[v] = r + 2 * top_arcs.len() + t;
        }
        // tau carries the standard bottom back to the actual bottom row.
        let mut tau = vec![0usize; k];
        for (i, &(_, w)) in verticals.iter().enumerate() {
            tau[i] = w;
        }
        for (j, &(a, b)) in bot_arcs.iter().enumerate() {
            tau[r + 2 * j] = a;
            tau[r + 2 * j + 1] = b;
        }
        for (t, &v) in bot_iso.iter().enumerate() {
            tau[r + 2 * bot_arcs.len() + t] = v;
        }

        let mut letters = permutation_word(&sigma);
        for j in 0..top_arcs.len() {
            let i = r + 2 * j + 1; // 1-indexed position of the arc's left column
            letters.push(Letter::T(i));
            letters.push(Letter::P(i));
        }
        for t in 0..top_iso.len() {
            letters.push(Letter::P(r + 2 * top_arcs.len() + t + 1));
        }
        for j in 0..bot_arcs.len() {
            let i = r + 2 * j + 1;
            letters.push(Letter::P(i));
            letters.push(Letter::T(i));
        }
        for t in 0..bot_iso.len() {
            letters.push(Letter::P(r + 2 * bot_arcs.len() + t + 1));
        }
        letters.extend(permutation_word(&tau));

        GeneratorWord {
            k,
            letters,
            loop_power: 0,
        }
    }

    fn canonical_key(&self) -> Vec<(usize, usize)> {
        self.edges()
    }
}

impl GeneratorWord {
    /// Multiplies the word out left to right. Returns the product diagram
    /// and the total number of loops closed along the way (the power of x).
    pub fn evaluate(&self) -> (Diagram, u32) {
        let mut acc = Diagram::identity(self.k);
        let mut loops = 0u32;
        for letter in &self.letters {
            let g = match *letter {
                Letter::S(i) => Diagram::s(self.k, i),
                Letter::T(i) => Diagram::t(self.k, i),
                Letter::P(i) => Diagram::p(self.k, i),
            };
            let prod = acc.concatenate(&g).expect("same k by construction");
            acc = prod.diagram;
            loops += prod.loops;
        }
        (acc, loops)
    }
}

/// Factors the diagram of a permutation into adjacent transpositions by
/// bubble-sorting its one-line notation; the recorded swaps, in order,
/// multiply out (as diagrams, left to right) to the permutation diagram.
fn permutation_word(perm: &[usize]) -> Vec<Letter> {
    let mut a: Vec<usize> = perm.to_vec();
    let mut letters = Vec::new();
    loop {
        let mut swapped = false;
        for i in 0..a.len().saturating_sub(1) {
            if a[i] > a[i + 1] {
                a.swap(i, i + 1);
                letters.push(Letter::S(i + 1));
                swapped = true;
            }
        }
        if !swapped {
            return letters;
        }
    }
}

/// Vertex display name: "t1".."tk" for the top row, "b1".."bk" below.
pub fn vertex_name(k: usize, v: usize) -> String {
    if v < k {
        format!("t{}", v + 1)
    } else {
        format!("b{}", v - k + 1)
    }
}

/// Parses "t3" or "b12" back to a vertex index for width k.
pub fn parse_vertex(k: usize, name: &str) -> Result<usize, RbError> {
    let invalid = || RbError::InvalidVertex {
        vertex: name.to_string(),
        k,
    };
    let (row, num) = name.split_at(1);
    let idx: usize = num.parse().map_err(|_| invalid())?;
    if idx < 1 || idx > k {
        return Err(invalid());
    }
    match row {
        "t" => Ok(idx - 1),
        "b" => Ok(k + idx - 1),
        _ => Err(invalid()),
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Diagram {
    /// Canonical order: by k, then lexicographic on the sorted edge list
    /// (vertices ordered t1 < ... < tk < b1 < ... < bk).
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| self.canonical_key().cmp(&other.canonical_key()))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram(k={}; {})", self.k, self)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.edges();
        if edges.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = edges
            .iter()
            .map(|&(a, b)| format!("{}-{}", vertex_name(self.k, a), vertex_name(self.k, b)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    k: usize,
    edges: Vec<[String; 2]>,
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let edges = self
            .edges()
            .into_iter()
            .map(|(a, b)| [vertex_name(self.k, a), vertex_name(self.k, b)])
            .collect();
        DiagramJson { k: self.k, edges }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(de)?;
        let mut edges = Vec::with_capacity(raw.edges.len());
        for [a, b] in &raw.edges {
            let a = parse_vertex(raw.k, a).map_err(D::Error::custom)?;
            let b = parse_vertex(raw.k, b).map_err(D::Error::custom)?;
            edges.push((a, b));
        }
        Diagram::from_edges(raw.k, &edges).map_err(D::Error::custom)
    }
}

/// Number of diagrams on k columns: sum over the number 2l of matched
/// vertices of C(2k, 2l) * (2l-1)!!.
pub fn count(k: usize) -> u128 {
    let mut total: u128 = 0;
    for l in 0..=k {
        total += binomial(2 * k, 2 * l) * odd_double_factorial(2 * l);
    }
    total
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// (2l-1)!! = (2l-1)(2l-3)...3.1, the number of perfect matchings of 2l
/// points; 1 when l = 0.
fn odd_double_factorial(two_l: usize) -> u128 {
    let mut acc: u128 = 1;
    let mut m = two_l as i64 - 1;
    while m > 1 {
        acc *= m as u128;
        m -= 2;
    }
    acc
}

/// All diagrams on k columns in canonical order (lexicographic on sorted
/// edge lists). Guarded by a width bound: the census grows like (2k-1)!!.
pub fn enumerate(k: usize) -> Result<Vec<Diagram>, RbError> {
    enumerate_with_bound(k, DEFAULT_ENUMERATE_BOUND)
}

/// As [`enumerate`], with an explicit width bound.
pub fn enumerate_with_bound(k: usize, bound: usize) -> Result<Vec<Diagram>, RbError> {
    if k > bound {
        return Err(RbError::BoundExceeded {
            what: "enumeration width k",
            requested: k,
            limit: bound,
        });
    }
    let mut out = Vec::with_capacity(count(k) as usize);
    let mut pairing: Vec<Option<u16>> = vec![None; 2 * k];
    fill(&mut pairing, 0, k, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn fill(pairing: &mut Vec<Option<u16>>, from: usize, k: usize, out: &mut Vec<Diagram>) {
    let n = 2 * k;
    match (from..n).find(|&v| pairing[v].is_none()) {
        None => out.push(Diagram {
            k,
            // the sentinel marks vertices decided isolated; strip it here
            pairing: pairing
                .iter()
                .map(|&p| if p == Some(u16::MAX) { None } else { p })
                .collect(),
        }),
        Some(v) => {
            // v stays isolated
            pairing[v] = Some(u16::MAX); // temporary marker meaning "decided isolated"
            fill(pairing, v + 1, k, out);
            pairing[v] = None;
            // or v pairs with a later free vertex
            for u in v + 1..n {
                if pairing[u].is_none() {
                    pairing[v] = Some(u as u16);
                    pairing[u] = Some(v as u16);
                    fill(pairing, v + 1, k, out);
                    pairing[v] = None;
                    pairing[u] = None;
                }
            }
        }
    }
}
