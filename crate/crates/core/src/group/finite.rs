//! Finite groups given by a multiplication table.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::{Elem, GResult, GroupError, GroupModel};

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub name: String,
    pub order: u32,
    /// Row-major: `table[a * order + b] = a * b`.
    pub table: Vec<u32>,
    pub generators: Vec<u32>,
    inv: Vec<u32>,
    /// Shortlex-minimal word per element, as symmetric-alphabet indices.
    words: Vec<Vec<u32>>,
    gen_names: Vec<char>,
    alphabet_elems: Vec<u32>,
}

impl FiniteGroup {
    pub fn new(name: &str, order: u32, table: Vec<u32>, generators: Vec<u32>) -> GResult<Self> {
        if table.len() != (order as usize) * (order as usize) {
            return Err(GroupError::BadInput("table size mismatch".into()));
        }
        for &v in &table {
            if v >= order {
                return Err(GroupError::BadInput("table entry out of range".into()));
            }
        }
        let mul = |a: u32, b: u32| table[(a as usize) * (order as usize) + b as usize];
        for a in 0..order {
            if mul(0, a) != a || mul(a, 0) != a {
                return Err(GroupError::BadInput("index 0 must be the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; order as usize];
        for a in 0..order {
            for b in 0..order {
                if mul(a, b) == 0 {
                    inv[a as usize] = b;
                }
            }
        }
        if inv.iter().any(|&v| v == u32::MAX) {
            return Err(GroupError::BadInput("table has no inverses".into()));
        }
        // the word metric uses the symmetric alphabet: each generator and
        // its inverse, lowercase/uppercase letters
        let mut alphabet: Vec<(char, u32)> = vec![];
        for (gi, &g) in generators.iter().enumerate() {
            let c = (b'a' + gi as u8) as char;
            alphabet.push((c, g));
            if inv[g as usize] != g {
                alphabet.push((c.to_ascii_uppercase(), inv[g as usize]));
            }
        }
        // BFS from the identity in alphabet order gives shortlex words.
        let mut words: Vec<Option<Vec<u32>>> = vec![None; order as usize];
        words[0] = Some(vec![]);
        let mut frontier = vec![0u32];
        while !frontier.is_empty() {
            let mut next = vec![];
            for &a in &frontier {
                for (li, &(_, g)) in alphabet.iter().enumerate() {
                    let b = mul(a, g);
                    if words[b as usize].is_none() {
                        let mut w = words[a as usize].clone().unwrap();
                        w.push(li as u32);
                        words[b as usize] = Some(w);
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        if words.iter().any(|w| w.is_none()) {
            return Err(GroupError::BadInput("generators do not generate".into()));
        }
        let words: Vec<Vec<u32>> = words.into_iter().map(|w| w.unwrap()).collect();
        let gen_names: Vec<char> = alphabet.iter().map(|&(c, _)| c).collect();
        let alphabet_elems: Vec<u32> = alphabet.iter().map(|&(_, g)| g).collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            order,
            table,
            generators,
            inv,
            words,
            gen_names,
            alphabet_elems,
        })
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[(a as usize) * (self.order as usize) + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn all_elements(&self) -> Vec<Elem> {
        (0..self.order).map(Elem::Finite).collect()
    }

    pub fn word_len(&self, a: u32) -> u64 {
        self.words[a as usize].len() as u64
    }

    pub fn word_dist(&self, a: &Elem, b: &Elem) -> u64 {
        match (a, b) {
            (Elem::Finite(x), Elem::Finite(y)) => self.word_len(self.mul(self.inv(*x), *y)),
            _ => panic!("mixed group backends"),
        }
    }

    pub fn diameter(&self) -> u64 {
        (0..self.order).map(|a| self.word_len(a)).max().unwrap_or(0)
    }

    pub fn shortlex_key(&self, a: u32) -> (u64, Vec<i64>) {
        let w = &self.words[a as usize];
        (w.len() as u64, w.iter().map(|&g| g as i64).collect())
    }

    pub fn symmetric_generators(&self) -> Vec<Elem> {
        let mut out: Vec<u32> = vec![];
        for &g in &self.generators {
            out.push(g);
            out.push(self.inv(g));
        }
        out.sort();
        out.dedup();
        out.into_iter().map(Elem::Finite).collect()
    }

    pub fn order_of(&self, a: u32) -> u64 {
        let mut n = 1;
        let mut cur = a;
        while cur != 0 {
            cur = self.mul(cur, a);
            n += 1;
        }
        n
    }

    pub fn class_of(&self, a: u32) -> Vec<u32> {
        let mut cls: Vec<u32> = (0..self.order)
            .map(|s| self.mul(self.mul(self.inv(s), a), s))
            .collect();
        cls.sort();
        cls.dedup();
        cls
    }

    pub fn class_rep(&self, a: &Elem, model: &GroupModel) -> Elem {
        let Elem::Finite(x) = a else {
            panic!("mixed group backends")
        };
        let cls: Vec<Elem> = self.class_of(*x).into_iter().map(Elem::Finite).collect();
        model.shortlex_min(cls.iter()).unwrap()
    }

    pub fn torsion_class_reps(&self, model: &GroupModel) -> Vec<Elem> {
        let mut seen = BTreeMap::new();
        for a in 0..self.order {
            let rep = self.class_rep(&Elem::Finite(a), model);
            seen.entry(rep.clone()).or_insert(rep);
        }
        seen.into_values().collect()
    }

    pub fn display(&self, a: u32) -> String {
        let w = &self.words[a as usize];
        if w.is_empty() {
            return "e".into();
        }
        w.iter().map(|&g| self.gen_names[g as usize]).collect()
    }

    pub fn parse(&self, s: &str) -> GResult<Elem> {
        if let Some(idx) = s.strip_prefix('#') {
            let k: u32 = idx
                .parse()
                .map_err(|_| GroupError::BadInput(format!("bad index {s}")))?;
            if k >= self.order {
                return Err(GroupError::BadInput(format!("index {k} out of range")));
            }
            return Ok(Elem::Finite(k));
        }
        let mut cur = 0u32;
        for c in s.chars() {
            if c == 'e' {
                continue;
            }
            let gi = self
                .gen_names
                .iter()
                .position(|&n| n == c)
                .ok_or_else(|| GroupError::BadInput(format!("unknown generator '{c}'")))?;
            cur = self.mul(cur, self.alphabet_elems[gi]);
        }
        Ok(Elem::Finite(cur))
    }
}

/// Build a finite group from permutation generators (on `0..n`). Index 0 is
/// the identity; elements are closed under products in BFS order.
fn from_perms(name: &str, degree: usize, gens: &[Vec<usize>]) -> FiniteGroup {
    let id: Vec<usize> = (0..degree).collect();
    let compose = |f: &[usize], g: &[usize]| -> Vec<usize> {
        // (f * g)(x) = f(g(x))
        (0..degree).map(|x| f[g[x]]).collect()
    };
    let mut elems: Vec<Vec<usize>> = vec![id.clone()];
    let mut index: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
    index.insert(id, 0);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = vec![];
        for &ai in &frontier {
            for g in gens {
                // right multiplication by g
                let prod = compose(&elems[ai], g);
                if !index.contains_key(&prod) {
                    let idx = elems.len() as u32;
                    index.insert(prod.clone(), idx);
                    elems.push(prod);
                    next.push(idx as usize);
                }
            }
        }
        frontier = next;
    }
    let n = elems.len() as u32;
    let mut table = vec![0u32; (n as usize) * (n as usize)];
    for (ai, a) in elems.iter().enumerate() {
        for (bi, b) in elems.iter().enumerate() {
            let prod = compose(a, b);
            table[ai * (n as usize) + bi] = index[&prod];
        }
    }
    let gen_idx: Vec<u32> = gens.iter().map(|g| index[g]).collect();
    FiniteGroup::new(name, n, table, gen_idx).expect("builtin table is valid")
}

pub fn builtin_z2() -> FiniteGroup {
    from_perms("z2", 2, &[vec![1, 0]])
}

pub fn builtin_z2xz2() -> FiniteGroup {
    from_perms("z2xz2", 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
}

pub fn builtin_s3() -> FiniteGroup {
    // r = (0 1 2), s = (0 1)
    from_perms("s3", 3, &[vec![1, 2, 0], vec![1, 0, 2]])
}

pub fn builtin_d4() -> FiniteGroup {
    // square corners 0..3; r = rotation, s = reflection
    from_perms("d4", 4, &[vec![1, 2, 3, 0], vec![1, 0, 3, 2]])
}

#[derive(Deserialize)]
struct TableFile {
    name: String,
    order: u32,
    table: Vec<Vec<u32>>,
    generators: Vec<u32>,
}

pub fn from_json_file(path: &str) -> GResult<FiniteGroup> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::BadInput(format!("cannot read {path}: {e}")))?;
    let spec: TableFile = serde_json::from_str(&text)
        .map_err(|e| GroupError::BadInput(format!("bad group file {path}: {e}")))?;
    let flat: Vec<u32> = spec.table.into_iter().flatten().collect();
    FiniteGroup::new(&spec.name, spec.order, flat, spec.generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_structure() {
        let g = builtin_s3();
        assert_eq!(g.order, 6);
        let model = GroupModel::Finite(g.clone());
        let r = g.parse("a").unwrap();
        let Elem::Finite(ri) = r else { unreachable!() };
        assert_eq!(g.order_of(ri), 3);
        // r * r * r = e
        let rr = model.mul(&r, &r);
        assert_eq!(model.mul(&rr, &r), model.identity());
        // r and r^2 are conjugate
        assert!(model.same_class(&r, &rr));
        assert_eq!(model.torsion_class_reps().len(), 3);
    }

    #[test]
    fn d4_has_five_classes() {
        let g = builtin_d4();
        assert_eq!(g.order, 8);
        let model = GroupModel::Finite(g);
        assert_eq!(model.torsion_class_reps().len(), 5);
    }

    #[test]
    fn v4_and_z2() {
        assert_eq!(builtin_z2().order, 2);
        let v4 = builtin_z2xz2();
        assert_eq!(v4.order, 4);
        let model = GroupModel::Finite(v4);
        assert_eq!(model.torsion_class_reps().len(), 4);
    }
}
