//! Finite Weyl groups realized as permutation groups.

use std::collections::{HashMap, VecDeque};

use super::label::{Family, TypeLabel};
use crate::error::{Error, Result};

/// Index of an element inside its [`CoxeterGroup`].
///
/// Elements are numbered by increasing length, ties broken by the
/// lexicographic order of their canonical reduced words, so `0` is the
/// identity and the last index is the longest element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement(pub usize);

#[derive(Debug, Clone)]
pub struct ConjClassW {
    pub id: usize,
    pub members: Vec<WeylElement>,
    pub min_length: usize,
    /// `C ∩ W_min`, in element order.
    pub min_members: Vec<WeylElement>,
    pub signed_cycle_label: Option<(Vec<usize>, Vec<usize>)>,
}

impl ConjClassW {
    /// The lexicographically least minimal-length member.
    pub fn representative(&self) -> WeylElement {
        self.min_members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    label: TypeLabel,
    degree: usize,
    perms: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    words: Vec<Vec<u8>>,
    lengths: Vec<usize>,
    left_gen: Vec<Vec<usize>>,
    right_gen: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    coxeter_matrix: Vec<Vec<usize>>,
    classes: Vec<ConjClassW>,
    class_of: Vec<usize>,
}

/// Permutations (0-based images) of the simple reflections of `label`.
pub fn generator_permutations(label: TypeLabel) -> (usize, Vec<Vec<u8>>) {
    let n = label.rank;
    match label.family {
        Family::A => {
            let deg = n + 1;
            let gens = (0..n)
                .map(|i| {
                    let mut p: Vec<u8> = (0..deg as u8).collect();
                    p.swap(i, i + 1);
                    p
                })
                .collect();
            (deg, gens)
        }
        Family::B | Family::C => {
            let deg = 2 * n;
            let mirror = |x: usize| deg - 1 - x;
            let mut gens = Vec::with_capacity(n);
            for i in 0..n - 1 {
                let mut p: Vec<u8> = (0..deg as u8).collect();
                p.swap(i, i + 1);
                p.swap(mirror(i), mirror(i + 1));
                gens.push(p);
            }
            let mut p: Vec<u8> = (0..deg as u8).collect();
            p.swap(n - 1, n);
            gens.push(p);
            (deg, gens)
        }
        Family::G => {
            // Dihedral group of order 12 acting on the vertices of a hexagon.
            let s1 = (0..6u8).map(|x| (6 - x) % 6).collect();
            let s2 = (0..6u8).map(|x| (7 - x) % 6).collect();
            (6, vec![s1, s2])
        }
    }
}

fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&x| a[x as usize]).collect()
}

impl CoxeterGroup {
    pub fn label(&self) -> TypeLabel {
        self.label
    }
    pub fn order(&self) -> usize {
        self.perms.len()
    }
    pub fn rank(&self) -> usize {
        self.left_gen.len()
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn identity(&self) -> WeylElement {
        WeylElement(0)
    }
    pub fn longest(&self) -> WeylElement {
        WeylElement(self.order() - 1)
    }
    pub fn elements(&self) -> impl Iterator<Item = WeylElement> {
        (0..self.order()).map(WeylElement)
    }
    pub fn length(&self, w: WeylElement) -> usize {
        self.lengths[w.0]
    }
    /// Canonical reduced word, generator indices starting at 1.
    pub fn word(&self, w: WeylElement) -> &[u8] {
        &self.words[w.0]
    }
    pub fn perm(&self, w: WeylElement) -> &[u8] {
        &self.perms[w.0]
    }
    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        WeylElement(self.inverses[w.0])
    }
    pub fn coxeter_matrix(&self) -> &[Vec<usize>] {
        &self.coxeter_matrix
    }
    /// `s_i * w`, with `i` starting at 1.
    pub fn left_mul_gen(&self, i: usize, w: WeylElement) -> WeylElement {
        WeylElement(self.left_gen[i - 1][w.0])
    }
    /// `w * s_i`.
    pub fn right_mul_gen(&self, w: WeylElement, i: usize) -> WeylElement {
        WeylElement(self.right_gen[i - 1][w.0])
    }
    pub fn generator(&self, i: usize) -> WeylElement {
        self.left_mul_gen(i, self.identity())
    }

    pub fn mul(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        self.words[a.0].iter().rev().fold(b, |acc, &s| self.left_mul_gen(s as usize, acc))
    }

    pub fn from_perm(&self, perm: &[u8]) -> Option<WeylElement> {
        self.index.get(perm).map(|&i| WeylElement(i))
    }

    /// Product of the generators in `word` (indices from 1); the word need not be reduced.
    pub fn from_word(&self, word: &[u8]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &s in word.iter().rev() {
            if s == 0 || s as usize > self.rank() {
                return Err(Error::Parse(format!("generator s{s} out of range for {}", self.label)));
            }
            w = self.left_mul_gen(s as usize, w);
        }
        Ok(w)
    }

    /// Wire form: `"1,2,1"`; the identity is `"e"`.
    pub fn serialize_word(&self, w: WeylElement) -> String {
        let word = self.word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
        }
    }

    /// Inverse of [`Self::serialize_word`].
    pub fn parse_serialized(&self, text: &str) -> Result<WeylElement> {
        if text.trim() == "e" {
            return Ok(self.identity());
        }
        let digits: Vec<u8> = text
            .split(',')
            .map(|x| x.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad word {text:?}"))))
            .collect::<Result<_>>()?;
        self.from_word(&digits)
    }

    /// Conventional label: `"s1s2s1"`; the identity is `"1"`.
    pub fn word_label(&self, w: WeylElement) -> String {
        let word = self.word(w);
        if word.is_empty() {
            "1".to_string()
        } else {
            word.iter().map(|s| format!("s{s}")).collect()
        }
    }

    /// Accepts `"e"`, `"1"`, `"w0"`, `"1,2,1"`, `"s1s2s1"` or `"121"`.
    pub fn parse_element(&self, text: &str) -> Result<WeylElement> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')').trim();
        match t {
            "" | "e" | "1" => return Ok(self.identity()),
            "w0" => return Ok(self.longest()),
            _ => {}
        }
        let digits: Vec<u8> = if t.contains(',') {
            t.split(',')
                .map(|x| x.trim().parse::<u8>().map_err(|_| Error::Parse(text.to_string())))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .filter(|c| *c != 's')
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse(text.to_string())))
                .collect::<Result<_>>()?
        };
        self.from_word(&digits)
    }

    pub fn classes(&self) -> &[ConjClassW] {
        &self.classes
    }
    pub fn class_of(&self, w: WeylElement) -> usize {
        self.class_of[w.0]
    }

    /// Label of a class by its representative's word, e.g. `"(s1s2)"`.
    pub fn class_label(&self, class: usize) -> String {
        let rep = self.classes[class].representative();
        if rep == self.longest() && self.classes[class].len() == 1 && self.order() > 2 {
            return "(w0)".to_string();
        }
        format!("({})", self.word_label(rep))
    }

    /// Resolves a label such as `"(s2s3)"` or `"w0"` to a class id.
    pub fn parse_class(&self, text: &str) -> Result<usize> {
        Ok(self.class_of(self.parse_element(text)?))
    }

    pub fn is_min_length(&self, w: WeylElement) -> bool {
        self.classes[self.class_of(w)].min_length == self.length(w)
    }

    /// The permutation `w`, precomposed with a map sending point `x` to `img(x)`.
    pub fn map_perm(&self, w: WeylElement, f: impl Fn(u8) -> u8) -> Vec<u8> {
        self.perms[w.0].iter().map(|&x| f(x)).collect()
    }
}

/// Builds the Weyl group of `label` with full element enumeration.
pub fn build_weyl(label: TypeLabel) -> Result<CoxeterGroup> {
    let (degree, gens) = generator_permutations(label);
    let r = gens.len();
    let id: Vec<u8> = (0..degree as u8).collect();

    // Breadth-first search by left multiplication; BFS depth is the Coxeter length.
    let mut perms = vec![id.clone()];
    let mut lengths = vec![0usize];
    let mut index: HashMap<Vec<u8>, usize> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let sw = compose(g, &perms[w]);
            if !index.contains_key(&sw) {
                index.insert(sw.clone(), perms.len());
                perms.push(sw);
                lengths.push(lengths[w] + 1);
                queue.push_back(perms.len() - 1);
            }
        }
    }
    if perms.len() > 50_000 {
        return Err(Error::UnsupportedType(format!("{label}: group too large")));
    }

    // Lexicographically least reduced words, built in BFS (length) order.
    let mut words: Vec<Vec<u8>> = vec![Vec::new(); perms.len()];
    for w in 1..perms.len() {
        let (s, sw) = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (i, index[&compose(g, &perms[w])]))
            .find(|&(_, sw)| lengths[sw] < lengths[w])
            .expect("nonidentity element has a left descent");
        let mut word = vec![s as u8 + 1];
        word.extend_from_slice(&words[sw]);
        words[w] = word;
    }

    let mut order: Vec<usize> = (0..perms.len()).collect();
    order.sort_by(|&a, &b| lengths[a].cmp(&lengths[b]).then_with(|| words[a].cmp(&words[b])));
    let perms: Vec<Vec<u8>> = order.iter().map(|&i| perms[i].clone()).collect();
    let lengths: Vec<usize> = order.iter().map(|&i| lengths[i]).collect();
    let words: Vec<Vec<u8>> = order.iter().map(|&i| words[i].clone()).collect();
    let index: HashMap<Vec<u8>, usize> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

    let left_gen: Vec<Vec<usize>> =
        gens.iter().map(|g| perms.iter().map(|p| index[&compose(g, p)]).collect()).collect();
    let right_gen: Vec<Vec<usize>> =
        gens.iter().map(|g| perms.iter().map(|p| index[&compose(p, g)]).collect()).collect();
    let inverses: Vec<usize> = perms
        .iter()
        .map(|p| {
            let mut inv = vec![0u8; degree];
            for (i, &x) in p.iter().enumerate() {
                inv[x as usize] = i as u8;
            }
            index[&inv]
        })
        .collect();

    let mut coxeter_matrix = vec![vec![1usize; r]; r];
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let st = compose(&gens[i], &gens[j]);
            let mut acc = st.clone();
            let mut m = 1;
            while acc.iter().enumerate().any(|(k, &x)| k as u8 != x) {
                acc = compose(&st, &acc);
                m += 1;
            }
            coxeter_matrix[i][j] = m;
        }
    }

    let mut group = CoxeterGroup {
        label,
        degree,
        perms,
        index,
        words,
        lengths,
        left_gen,
        right_gen,
        inverses,
        coxeter_matrix,
        classes: Vec::new(),
        class_of: Vec::new(),
    };
    let (classes, class_of) = conjugacy_classes(&group);
    group.classes = classes;
    group.class_of = class_of;
    Ok(group)
}

/// Partitions `W` into conjugacy classes by orbit closure under conjugation by generators.
pub fn conjugacy_classes(w: &CoxeterGroup) -> (Vec<ConjClassW>, Vec<usize>) {
    let n = w.order();
    let mut seen = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] != usize::MAX {
            continue;
        }
        let cid = raw.len();
        let mut members = vec![start];
        seen[start] = cid;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for s in 1..=w.rank() {
                let y = w.right_mul_gen(w.left_mul_gen(s, WeylElement(x)), s).0;
                if seen[y] == usize::MAX {
                    seen[y] = cid;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        raw.push(members);
    }
    // Elements are sorted by (length, word), so each class's first member is its
    // lexicographically least minimal-length element; order classes by it.
    raw.sort_by_key(|m| m[0]);
    let mut class_of = vec![0; n];
    let classes = raw
        .into_iter()
        .enumerate()
        .map(|(id, members)| {
            for &m in &members {
                class_of[m] = id;
            }
            let min_length = w.lengths[members[0]];
            let min_members: Vec<WeylElement> =
                members.iter().filter(|&&m| w.lengths[m] == min_length).map(|&m| WeylElement(m)).collect();
            let signed_cycle_label = if w.label.is_signed() {
                super::signed::signed_cycle_type(w, WeylElement(members[0])).ok()
            } else {
                None
            };
            ConjClassW {
                id,
                members: members.into_iter().map(WeylElement).collect(),
                min_length,
                min_members,
                signed_cycle_label,
            }
        })
        .collect();
    (classes, class_of)
}

pub fn minimal_length_reps(class: &ConjClassW) -> &[WeylElement] {
    &class.min_members
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> CoxeterGroup {
        build_weyl(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders_and_longest_lengths() {
        for (t, order, l0) in [("A1", 2, 1), ("A2", 6, 3), ("B2", 8, 4), ("G2", 12, 6), ("B3", 48, 9), ("C3", 48, 9)] {
            let w = grp(t);
            assert_eq!(w.order(), order, "{t}");
            assert_eq!(w.length(w.longest()), l0, "{t}");
        }
    }

    #[test]
    fn coxeter_relations() {
        let c3 = grp("C3");
        let m = c3.coxeter_matrix();
        assert_eq!(m[0][1], 3);
        assert_eq!(m[0][2], 2);
        assert_eq!(m[1][2], 4);
        assert_eq!(grp("G2").coxeter_matrix()[0][1], 6);
        assert_eq!(grp("B2").coxeter_matrix()[0][1], 4);
        // (s1 s3)^2 = 1
        let s13 = c3.from_word(&[1, 3, 1, 3]).unwrap();
        assert_eq!(s13, c3.identity());
    }

    #[test]
    fn class_counts_and_labels() {
        let a2 = grp("A2");
        let labels: Vec<String> = (0..a2.classes().len()).map(|c| a2.class_label(c)).collect();
        assert_eq!(labels, ["(1)", "(s1)", "(s1s2)"]);
        let b2 = grp("B2");
        let labels: Vec<String> = (0..b2.classes().len()).map(|c| b2.class_label(c)).collect();
        assert_eq!(labels, ["(1)", "(s1)", "(s2)", "(s1s2)", "(w0)"]);
        assert_eq!(grp("C3").classes().len(), 10);
        assert_eq!(grp("B3").classes().len(), 10);
        assert_eq!(grp("G2").classes().len(), 6);
    }

    #[test]
    fn minimal_length_members() {
        let b2 = grp("B2");
        let c = &b2.classes()[b2.class_of(b2.longest())];
        assert_eq!(minimal_length_reps(c), &[b2.longest()]);
        assert_eq!(b2.word_label(b2.longest()), "s1s2s1s2");

        let a2 = grp("A2");
        let cox = &a2.classes()[a2.parse_class("s1s2").unwrap()];
        let reps: Vec<String> = cox.min_members.iter().map(|&w| a2.word_label(w)).collect();
        assert_eq!(reps, ["s1s2", "s2s1"]);

        let c3 = grp("C3");
        let cl = &c3.classes()[c3.parse_class("(s2s3s2s3)").unwrap()];
        assert_eq!(cl.min_length, 4);
        assert!(cl.min_members.iter().all(|&w| c3.length(w) == 4));
    }

    #[test]
    fn length_laws() {
        for t in ["A3", "B3", "G2"] {
            let w = grp(t);
            let w0 = w.longest();
            for x in w.elements() {
                assert_eq!(w.length(x), w.length(w.inverse(x)));
                assert_eq!(w.length(w.mul(w0, x)), w.length(w0) - w.length(x));
                assert_eq!(w.word(x).len(), w.length(x));
                assert_eq!(w.from_word(w.word(x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn classes_partition_group() {
        for t in ["A3", "B3", "C3", "G2"] {
            let w = grp(t);
            let total: usize = w.classes().iter().map(|c| c.len()).sum();
            assert_eq!(total, w.order());
            for c in w.classes() {
                for &x in &c.members {
                    for y in w.elements() {
                        let conj = w.mul(w.mul(y, x), w.inverse(y));
                        assert_eq!(w.class_of(conj), c.id);
                    }
                }
            }
        }
    }

    #[test]
    fn serialization_of_words() {
        let a2 = grp("A2");
        let w = a2.longest();
        assert_eq!(a2.serialize_word(w), "1,2,1");
        assert_eq!(a2.serialize_word(a2.identity()), "e");
        assert_eq!(a2.parse_element("1,2,1").unwrap(), w);
        assert_eq!(a2.parse_element("s2s1s2").unwrap(), w);
        assert!(a2.parse_element("s4").is_err());
    }
}
