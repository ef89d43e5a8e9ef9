use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{ForgeError, Result};

/// A permutation of `0..n` as its image list.
pub type Perm = Vec<u8>;

/// Sorted cycle lengths, fixed points included.
pub type CycleType = Vec<usize>;

pub fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a . b)(i) = a(b(i))
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn inverse(a: &Perm) -> Perm {
    let mut inv = vec![0u8; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j as usize] = i as u8;
    }
    inv
}

pub fn cycle_type(a: &Perm) -> CycleType {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = a[i] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// `1^3 2^2` style rendering.
pub fn format_cycle_type(c: &[usize]) -> String {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in c {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .iter()
        .map(|(l, k)| if *k == 1 { l.to_string() } else { format!("{l}^{k}") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A permutation group given by generators, with its elements and
/// cycle-type histogram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupTable {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    #[serde(skip)]
    pub elements: Vec<Perm>,
    pub order: usize,
    pub histogram: BTreeMap<CycleType, usize>,
}

impl PermGroupTable {
    /// Closure of the generators under composition.
    pub fn from_generators(name: &str, degree: usize, generators: Vec<Perm>) -> Self {
        let identity: Perm = (0..degree as u8).collect();
        let mut set = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let h = compose(s, &g);
                if set.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        let elements: Vec<Perm> = set.into_iter().collect();
        let mut histogram = BTreeMap::new();
        for e in &elements {
            *histogram.entry(cycle_type(e)).or_default() += 1;
        }
        PermGroupTable { name: name.to_string(), degree, generators, order: elements.len(), elements, histogram }
    }

    /// Proportion of elements of each cycle type.
    pub fn frequencies(&self) -> BTreeMap<CycleType, f64> {
        self.histogram
            .iter()
            .map(|(k, &v)| (k.clone(), v as f64 / self.order as f64))
            .collect()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }
}

/// Names accepted by [`group_table`].
pub const GROUP_NAMES: [&str; 13] = [
    "Z2", "Z3", "Z4", "Z5", "Z6", "D5", "F20", "F42", "F54", "Hol8", "PGL3_2", "AGL3_2", "S5",
];

fn affine(n: u8, a: u8, b: u8) -> Perm {
    (0..n).map(|x| ((a as u16 * x as u16 + b as u16) % n as u16) as u8).collect()
}

/// Matrix over `F_2` acting on vectors encoded as 3-bit masks; `rows[i]` is
/// the mask of row `i`.
fn f2_linear(rows: [u8; 3], v: u8) -> u8 {
    (0..3).fold(0, |acc, i| acc | ((((rows[i] & v).count_ones() & 1) as u8) << i))
}

fn gl3_generators() -> [[u8; 3]; 2] {
    // transvection e_1 += e_2 and the coordinate cycle
    [[0b011, 0b010, 0b100], [0b100, 0b001, 0b010]]
}

pub fn group_table(name: &str) -> Result<PermGroupTable> {
    let t = match name {
        "Z2" | "Z3" | "Z4" | "Z5" | "Z6" => {
            let n: u8 = name[1..].parse().expect("digit");
            PermGroupTable::from_generators(name, n as usize, vec![affine(n, 1, 1)])
        }
        "D5" => PermGroupTable::from_generators(name, 5, vec![affine(5, 1, 1), affine(5, 4, 0)]),
        "F20" => PermGroupTable::from_generators(name, 5, vec![affine(5, 1, 1), affine(5, 2, 0)]),
        "F42" => PermGroupTable::from_generators(name, 7, vec![affine(7, 1, 1), affine(7, 3, 0)]),
        "F54" => PermGroupTable::from_generators(name, 9, vec![affine(9, 1, 1), affine(9, 2, 0)]),
        "Hol8" => PermGroupTable::from_generators(
            name,
            8,
            vec![affine(8, 1, 1), affine(8, 3, 0), affine(8, 5, 0)],
        ),
        "S5" => {
            let swap: Perm = vec![1, 0, 2, 3, 4];
            PermGroupTable::from_generators(name, 5, vec![affine(5, 1, 1), swap])
        }
        "PGL3_2" => {
            // points of the Fano plane: nonzero vectors 1..=7, relabelled 0..7
            let gens = gl3_generators()
                .iter()
                .map(|m| (1..=7u8).map(|v| f2_linear(*m, v) - 1).collect())
                .collect();
            PermGroupTable::from_generators(name, 7, gens)
        }
        "AGL3_2" => {
            let mut gens: Vec<Perm> = gl3_generators()
                .iter()
                .map(|m| (0..8u8).map(|v| f2_linear(*m, v)).collect())
                .collect();
            gens.push((0..8u8).map(|v| v ^ 1).collect());
            PermGroupTable::from_generators(name, 8, gens)
        }
        _ => return Err(ForgeError::UnknownGroup(name.to_string())),
    };
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hist(t: &PermGroupTable) -> Vec<(String, usize)> {
        t.histogram.iter().map(|(k, v)| (format_cycle_type(k), *v)).collect()
    }

    #[test]
    fn orders() {
        let want = [
            ("Z5", 5),
            ("D5", 10),
            ("F20", 20),
            ("F42", 42),
            ("F54", 54),
            ("Hol8", 32),
            ("PGL3_2", 168),
            ("AGL3_2", 1344),
            ("S5", 120),
        ];
        for (name, order) in want {
            let t = group_table(name).unwrap();
            assert_eq!(t.order, order, "{name}");
            assert_eq!(t.histogram.values().sum::<usize>(), order);
        }
        assert!(matches!(group_table("M11"), Err(ForgeError::UnknownGroup(_))));
    }

    #[test]
    fn histograms() {
        let z5 = group_table("Z5").unwrap();
        assert_eq!(hist(&z5), vec![("1^5".into(), 1), ("5".into(), 4)]);
        let f20 = group_table("F20").unwrap();
        let mut h = hist(&f20);
        h.sort();
        assert_eq!(h, vec![("1 2^2".into(), 5), ("1 4".into(), 10), ("1^5".into(), 1), ("5".into(), 4)]);
        let pgl = group_table("PGL3_2").unwrap();
        let mut h = hist(&pgl);
        h.sort();
        assert_eq!(
            h,
            vec![
                ("1 2 4".into(), 42),
                ("1 3^2".into(), 56),
                ("1^3 2^2".into(), 21),
                ("1^7".into(), 1),
                ("7".into(), 48)
            ]
        );
    }

    #[test]
    fn closure_is_closed() {
        let t = group_table("F42").unwrap();
        for a in &t.elements {
            assert!(t.contains(&inverse(a)));
            for g in &t.generators {
                assert!(t.contains(&compose(a, g)));
            }
        }
    }
}
