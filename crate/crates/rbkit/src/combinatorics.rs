//! Partitions, growth diagrams, and the path model underlying the
//! representation theory of the diagram algebra.
//!
//! Irreducible modules at width k are indexed by partitions of size at most
//! k; their dimensions count walks on Young's lattice that may add a box,
//! remove a box, or stay put at each step. The insertion algorithm in
//! [`rsk`] realizes the resulting sum-of-squares census bijectively.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagrams::Diagram;
use crate::RbError;

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, RbError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(RbError::InvalidPartition(format!(
                "parts must be weakly decreasing, got {parts:?}"
            )));
        }
        if parts.contains(&0) {
            return Err(RbError::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Length of row r (0-indexed), 0 beyond the last row.
    pub fn row(&self, r: usize) -> usize {
        self.parts.get(r).copied().unwrap_or(0)
    }

    /// The transposed shape.
    pub fn conjugate(&self) -> Partition {
        let cols = self.row(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// Cells (row, col), 0-indexed, where a box can be added.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..=self.parts.len() {
            let here = self.row(r);
            let above = if r == 0 { usize::MAX } else { self.row(r - 1) };
            if here < above {
                out.push((r, here));
            }
        }
        out
    }

    /// Cells (row, col), 0-indexed, where a box can be removed.
    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.parts.len() {
            let here = self.parts[r];
            let below = self.row(r + 1);
            if here > below {
                out.push((r, here - 1));
            }
        }
        out
    }

    fn with_cell_added(&self, (r, _): (usize, usize)) -> Partition {
        let mut parts = self.parts.clone();
        if r == parts.len() {
            parts.push(1);
        } else {
            parts[r] += 1;
        }
        Partition { parts }
    }

    fn with_cell_removed(&self, (r, _): (usize, usize)) -> Partition {
        let mut parts = self.parts.clone();
        parts[r] -= 1;
        if parts[r] == 0 {
            parts.remove(r);
        }
        Partition { parts }
    }

    /// Shapes reachable by adding one box.
    pub fn up_neighbors(&self) -> Vec<Partition> {
        self.addable_cells()
            .into_iter()
            .map(|c| self.with_cell_added(c))
            .collect()
    }

    /// Shapes reachable by removing one box.
    pub fn down_neighbors(&self) -> Vec<Partition> {
        self.removable_cells()
            .into_iter()
            .map(|c| self.with_cell_removed(c))
            .collect()
    }

    /// The shapes a walk may move to from here: stay, add, or remove.
    pub fn step_neighbors(&self) -> Vec<Partition> {
        let mut out = vec![self.clone()];
        out.extend(self.down_neighbors());
        out.extend(self.up_neighbors());
        out.sort();
        out
    }

    /// The cell by which `self` and a one-box-larger shape differ.
    pub fn added_cell(&self, larger: &Partition) -> Option<(usize, usize)> {
        if larger.size() != self.size() + 1 {
            return None;
        }
        for r in 0..larger.parts.len() {
            let small = self.row(r);
            let big = larger.parts[r];
            if big == small + 1 && (r + 1..larger.parts.len()).all(|j| larger.parts[j] == self.row(j)) {
                return Some((r, small));
            }
            if big != small {
                return None;
            }
        }
        None
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    /// Size first, then lexicographic on parts: () < (1) < (1,1) < (2) < ...
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", inner.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = RbError;
    fn try_from(parts: Vec<usize>) -> Result<Self, RbError> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

/// All partitions of n, in the (size, lexicographic) order.
pub fn partitions_of_size(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: acc.clone() });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            acc.push(part);
            rec(remaining - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Multiplicity tables m_j^lambda for levels j = 0..=k: the number of
/// k-step walks from the empty shape, where each step stays, adds a box,
/// or removes a box.
pub fn bratteli(k: usize) -> Vec<BTreeMap<Partition, u128>> {
    let mut levels = Vec::with_capacity(k + 1);
    let mut current = BTreeMap::new();
    current.insert(Partition::empty(), 1u128);
    levels.push(current);
    for j in 1..=k {
        let prev = &levels[j - 1];
        let mut next: BTreeMap<Partition, u128> = BTreeMap::new();
        for (shape, &m) in prev {
            for target in shape.step_neighbors() {
                *next.entry(target).or_insert(0) += m;
            }
        }
        levels.push(next);
    }
    levels
}

/// Number of walks of length k from the empty shape to `target`.
pub fn multiplicity(k: usize, target: &Partition) -> u128 {
    bratteli(k)
        .pop()
        .and_then(|level| level.get(target).copied())
        .unwrap_or(0)
}

/// Sum of squared multiplicities at level k; equals the diagram census
/// when the path model is complete.
pub fn sum_of_squares(k: usize) -> u128 {
    bratteli(k)
        .pop()
        .map(|level| level.values().map(|m| m * m).sum())
        .unwrap_or(0)
}

/// A walk on Young's lattice: shapes[j] after j steps, starting empty,
/// each step staying put or changing by one box.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path {
    pub shapes: Vec<Partition>,
}

impl Path {
    /// Validates the step rule and the empty start.
    pub fn new(shapes: Vec<Partition>) -> Result<Self, RbError> {
        if shapes.first() != Some(&Partition::empty()) {
            return Err(RbError::InvalidPartition(
                "a path must start at the empty shape".into(),
            ));
        }
        for w in shapes.windows(2) {
            if !w[0].step_neighbors().contains(&w[1]) {
                return Err(RbError::InvalidPartition(format!(
                    "illegal step {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { shapes })
    }

    pub fn len_steps(&self) -> usize {
        self.shapes.len() - 1
    }

    pub fn target(&self) -> &Partition {
        self.shapes.last().expect("paths are nonempty")
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.shapes.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", inner.join(" -> "))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All k-step walks from the empty shape to `target`, in canonical order:
/// paths are compared by their next-to-last shape first, then the shape
/// before that, and so on back to the start. Restricting a module to one
/// fewer strand therefore acts on contiguous blocks of this basis.
pub fn enumerate_paths(k: usize, target: &Partition) -> Vec<Path> {
    if target.size() > k {
        return Vec::new();
    }
    let levels = bratteli(k);
    let mut out = Vec::new();
    let mut suffix = vec![target.clone()];
    descend(&levels, k, target, &mut suffix, &mut out);
    out
}

fn descend(
    levels: &[BTreeMap<Partition, u128>],
    j: usize,
    shape: &Partition,
    suffix: &mut Vec<Partition>,
    out: &mut Vec<Path>,
) {
    if j == 0 {
        let mut shapes = suffix.clone();
        shapes.reverse();
        out.push(Path { shapes });
        return;
    }
    // step_neighbors is sorted, which makes the recursion emit canonical order
    for prev in shape.step_neighbors() {
        if levels[j - 1].contains_key(&prev) {
            suffix.push(prev.clone());
            descend(levels, j - 1, &prev, suffix, out);
            suffix.pop();
        }
    }
}

/// A tableau with strictly increasing rows and columns, used as the
/// insertion state of [`rsk`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn empty() -> Self {
        StandardTableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(|r| r.len()).collect(),
        }
    }

    /// Row-inserts a value: it displaces the smallest larger entry of the
    /// first row, which is inserted into the second row, and so on.
    pub fn insert(&mut self, value: usize) {
        let mut v = value;
        for row in &mut self.rows {
            match row.iter().position(|&e| e > v) {
                None => {
                    row.push(v);
                    return;
                }
                Some(idx) => {
                    std::mem::swap(&mut row[idx], &mut v);
                }
            }
        }
        self.rows.push(vec![v]);
    }

    /// Removes a value by sliding: the cell holding it becomes a hole, the
    /// lesser of the entries right of and below the hole slides in, and the
    /// hole exits at an outer corner.
    pub fn remove(&mut self, value: usize) {
        let (mut r, mut c) = self
            .position_of(value)
            .expect("value must be present in the tableau");
        loop {
            let right = self.entry(r, c + 1);
            let below = self.entry(r + 1, c);
            match (right, below) {
                (None, None) => break,
                (Some(x), None) => {
                    self.rows[r][c] = x;
                    c += 1;
                }
                (None, Some(y)) => {
                    self.rows[r][c] = y;
                    r += 1;
                }
                (Some(x), Some(y)) => {
                    if x < y {
                        self.rows[r][c] = x;
                        c += 1;
                    } else {
                        self.rows[r][c] = y;
                        r += 1;
                    }
                }
            }
        }
        self.rows[r].pop();
        if self.rows[r].is_empty() {
            self.rows.pop();
        }
    }

    fn entry(&self, r: usize, c: usize) -> Option<usize> {
        self.rows.get(r).and_then(|row| row.get(c)).copied()
    }

    fn position_of(&self, value: usize) -> Option<(usize, usize)> {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&e| e == value) {
                return Some((r, c));
            }
        }
        None
    }
}

/// One event of the insertion scan, for display purposes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RskStep {
    Insert(usize),
    Remove(usize),
    Skip,
}

impl fmt::Display for RskStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RskStep::Insert(a) => write!(f, "{a}L"),
            RskStep::Remove(a) => write!(f, "{a}R"),
            RskStep::Skip => write!(f, "-"),
        }
    }
}

/// The image of a diagram under the insertion bijection: two walks of k
/// steps meeting at a common shape, plus the scan trace and the tableau
/// at the midpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RskOutput {
    pub p: Path,
    pub q: Path,
    pub steps: Vec<RskStep>,
    pub middle: StandardTableau,
}

/// Maps a diagram to a pair of walks by scanning its one-row form.
///
/// The 2k vertices are read as t1..tk then bk..b1 and numbered 1..2k in
/// that order. An edge whose right endpoint sits at position j carries the
/// label 2k+1-j; scanning positions left to right, the label is inserted
/// at the edge's left endpoint and slid back out at its right endpoint.
/// The walk P records the shape after each of the first k positions, the
/// walk Q (read backwards) after each of the last k.
pub fn rsk(d: &Diagram) -> RskOutput {
    let k = d.k();
    let n = 2 * k;
    // unfolded position (1-indexed) of vertex v
    let pos = |v: usize| if v < k { v + 1 } else { n - (v - k) };
    let mut events: Vec<RskStep> = vec![RskStep::Skip; n + 1];
    for (a, b) in d.edges() {
        let (i, j) = {
            let (x, y) = (pos(a), pos(b));
            (x.min(y), x.max(y))
        };
        let label = n + 1 - j;
        events[i] = RskStep::Insert(label);
        events[j] = RskStep::Remove(label);
    }

    let mut tableau = StandardTableau::empty();
    let mut shapes = Vec::with_capacity(n + 1);
    shapes.push(tableau.shape());
    for event in &events[1..] {
        match event {
            RskStep::Insert(a) => tableau.insert(*a),
            RskStep::Remove(a) => tableau.remove(*a),
            RskStep::Skip => {}
        }
        shapes.push(tableau.shape());
    }
    debug_assert!(shapes[n].parts().is_empty(), "scan must end empty");

    let middle_index = k;
    let p = Path {
        shapes: shapes[..=middle_index].to_vec(),
    };
    let q = Path {
        shapes: (middle_index..=n).rev().map(|i| shapes[i].clone()).collect(),
    };

    // rebuild the midpoint tableau for callers that want to see it
    let mut middle = StandardTableau::empty();
    for event in &events[1..=middle_index] {
        match event {
            RskStep::Insert(a) => middle.insert(*a),
            RskStep::Remove(a) => middle.remove(*a),
            RskStep::Skip => {}
        }
    }

    RskOutput {
        p,
        q,
        steps: events[1..].to_vec(),
        middle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams;
    use std::collections::BTreeSet;

    fn shape(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![3, 1]).is_ok());
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn partition_order_is_size_then_lex() {
        let mut got = vec![
            shape(&[2]),
            shape(&[1, 1]),
            shape(&[1]),
            Partition::empty(),
            shape(&[3]),
            shape(&[2, 1]),
        ];
        got.sort();
        let want = vec![
            Partition::empty(),
            shape(&[1]),
            shape(&[1, 1]),
            shape(&[2]),
            shape(&[2, 1]),
            shape(&[3]),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(shape(&[3, 1]).conjugate(), shape(&[2, 1, 1]));
        assert_eq!(shape(&[2, 2]).conjugate(), shape(&[2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(shape(&[4]).conjugate(), shape(&[1, 1, 1, 1]));
    }

    #[test]
    fn neighbors_of_hook() {
        let lam = shape(&[2, 1]);
        assert_eq!(
            lam.up_neighbors(),
            vec![shape(&[3, 1]), shape(&[2, 2]), shape(&[2, 1, 1])]
        );
        assert_eq!(lam.down_neighbors(), vec![shape(&[1, 1]), shape(&[2])]);
        assert_eq!(lam.addable_cells(), vec![(0, 2), (1, 1), (2, 0)]);
        assert_eq!(lam.removable_cells(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn added_cell_detection() {
        let lam = shape(&[2, 1]);
        assert_eq!(lam.added_cell(&shape(&[3, 1])), Some((0, 2)));
        assert_eq!(lam.added_cell(&shape(&[2, 2])), Some((1, 1)));
        assert_eq!(lam.added_cell(&shape(&[2, 1, 1])), Some((2, 0)));
        assert_eq!(lam.added_cell(&shape(&[2, 1])), None);
        assert_eq!(shape(&[2]).added_cell(&shape(&[1, 1, 1])), None);
    }

    #[test]
    fn partitions_by_size() {
        assert_eq!(partitions_of_size(0), vec![Partition::empty()]);
        assert_eq!(
            partitions_of_size(4),
            vec![
                shape(&[1, 1, 1, 1]),
                shape(&[2, 1, 1]),
                shape(&[2, 2]),
                shape(&[3, 1]),
                shape(&[4]),
            ]
        );
        // partition numbers p(1)..p(8)
        let want = [1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(partitions_of_size(n + 1).len(), w);
        }
    }

    #[test]
    fn multiplicity_tables_small_levels() {
        let levels = bratteli(4);
        let expect2: &[(&[usize], u128)] = &[(&[], 2), (&[1], 2), (&[1, 1], 1), (&[2], 1)];
        let expect3: &[(&[usize], u128)] = &[
            (&[], 4),
            (&[1], 6),
            (&[1, 1], 3),
            (&[2], 3),
            (&[1, 1, 1], 1),
            (&[2, 1], 2),
            (&[3], 1),
        ];
        let expect4: &[(&[usize], u128)] = &[
            (&[], 10),
            (&[1], 16),
            (&[1, 1], 12),
            (&[2], 12),
            (&[1, 1, 1], 4),
            (&[2, 1], 8),
            (&[3], 4),
            (&[1, 1, 1, 1], 1),
            (&[2, 1, 1], 3),
            (&[2, 2], 2),
            (&[3, 1], 3),
            (&[4], 1),
        ];
        for (level, expect) in [(2, expect2), (3, expect3), (4, expect4)] {
            let want: BTreeMap<Partition, u128> = expect
                .iter()
                .map(|&(parts, m)| (shape(parts), m))
                .collect();
            assert_eq!(levels[level], want, "level {level}");
        }
    }

    #[test]
    fn squared_multiplicities_match_census() {
        for k in 0..=8 {
            assert_eq!(sum_of_squares(k), diagrams::count(k), "k = {k}");
        }
    }

    #[test]
    fn path_count_matches_multiplicity() {
        let levels = bratteli(4);
        for (lam, &m) in &levels[4] {
            let paths = enumerate_paths(4, lam);
            assert_eq!(paths.len() as u128, m, "target {lam}");
            for p in &paths {
                assert_eq!(p.target(), lam);
                assert_eq!(p.len_steps(), 4);
                Path::new(p.shapes.clone()).unwrap();
            }
        }
    }

    #[test]
    fn canonical_path_order_groups_by_penultimate_shape() {
        let paths = enumerate_paths(4, &shape(&[2, 1]));
        assert_eq!(paths.len(), 8);
        // next-to-last shapes appear in sorted blocks
        let penult: Vec<Partition> = paths
            .iter()
            .map(|p| p.shapes[3].clone())
            .collect();
        let mut sorted = penult.clone();
        sorted.sort();
        assert_eq!(penult, sorted);
        // compare adjacent paths by the documented order
        for w in paths.windows(2) {
            let key = |p: &Path| {
                let mut v = p.shapes.clone();
                v.reverse();
                v
            };
            assert!(key(&w[0]) < key(&w[1]));
        }
    }

    #[test]
    fn two_step_paths_to_empty() {
        let paths = enumerate_paths(2, &Partition::empty());
        assert_eq!(
            paths,
            vec![
                Path {
                    shapes: vec![Partition::empty(); 3],
                },
                Path {
                    shapes: vec![Partition::empty(), shape(&[1]), Partition::empty()],
                },
            ]
        );
    }

    #[test]
    fn insertion_and_removal_keep_tableaux_standard() {
        let mut t = StandardTableau::empty();
        for v in [3, 9, 1, 4] {
            t.insert(v);
        }
        assert_eq!(t.rows(), &[vec![1, 4], vec![3, 9]]);
        t.remove(9);
        assert_eq!(t.rows(), &[vec![1, 4], vec![3]]);
        t.remove(1);
        // the hole at (0,0) pulls in the lesser of right (4) and below (3)
        assert_eq!(t.rows(), &[vec![3, 4]]);
    }

    #[test]
    fn rsk_identity_diagram() {
        let out = rsk(&Diagram::identity(2));
        let want = Path {
            shapes: vec![Partition::empty(), shape(&[1]), shape(&[2])],
        };
        assert_eq!(out.p, want);
        assert_eq!(out.q, want);
    }

    #[test]
    fn rsk_worked_six_column_example() {
        // one-row arcs (1,10), (2,4), (3,12), (5,9), (7,8); 6 and 11 isolated
        let k = 6;
        let pos_to_vertex = |p: usize| if p <= k { p - 1 } else { k + (2 * k - p) };
        let arcs = [(1, 10), (2, 4), (3, 12), (5, 9), (7, 8)];
        let edges: Vec<(usize, usize)> = arcs
            .iter()
            .map(|&(i, j)| (pos_to_vertex(i), pos_to_vertex(j)))
            .collect();
        let d = Diagram::from_edges(k, &edges).unwrap();

        let out = rsk(&d);
        let steps: Vec<String> = out.steps.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            steps,
            ["3L", "9L", "1L", "9R", "4L", "-", "5L", "5R", "4R", "3R", "-", "1R"]
        );
        let p_shapes: Vec<Partition> = [
            &[][..],
            &[1],
            &[2],
            &[2, 1],
            &[1, 1],
            &[2, 1],
            &[2, 1],
        ]
        .iter()
        .map(|p| shape(p))
        .collect();
        let q_shapes: Vec<Partition> = [
            &[][..],
            &[1],
            &[1],
            &[1, 1],
            &[2, 1],
            &[3, 1],
            &[2, 1],
        ]
        .iter()
        .map(|p| shape(p))
        .collect();
        assert_eq!(out.p.shapes, p_shapes);
        assert_eq!(out.q.shapes, q_shapes);
        assert_eq!(out.middle.shape(), shape(&[2, 1]));
    }

    #[test]
    fn rsk_is_injective_and_exhausts_path_pairs() {
        for k in 0..=4 {
            let mut seen: BTreeSet<(Path, Path)> = BTreeSet::new();
            let mut per_target: BTreeMap<Partition, u128> = BTreeMap::new();
            for d in diagrams::enumerate(k).unwrap() {
                let out = rsk(&d);
                assert_eq!(out.p.target(), out.q.target(), "paths must meet");
                assert_eq!(out.p.len_steps(), k);
                assert_eq!(out.q.len_steps(), k);
                *per_target.entry(out.p.target().clone()).or_insert(0) += 1;
                assert!(seen.insert((out.p, out.q)), "collision at k = {k}");
            }
            assert_eq!(seen.len() as u128, diagrams::count(k));
            // each shape receives exactly multiplicity^2 pairs
            let levels = bratteli(k);
            for (lam, &n) in &per_target {
                let m = levels[k].get(lam).copied().unwrap_or(0);
                assert_eq!(n, m * m, "shape {lam} at k = {k}");
            }
        }
    }

    #[test]
    fn partition_json_is_a_bare_array() {
        let lam = shape(&[3, 1]);
        assert_eq!(serde_json::to_string(&lam).unwrap(), "[3,1]");
        let back: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn path_json_shape() {
        let p = Path {
            shapes: vec![Partition::empty(), shape(&[1]), shape(&[1, 1])],
        };
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"shapes":[[],[1],[1,1]]}"#
        );
        let back: Path = serde_json::from_str(r#"{"shapes":[[],[1],[1,1]]}"#).unwrap();
        assert_eq!(back, p);
    }
}
