use std::collections::VecDeque;

use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// Conjugacy classes in canonical order together with power maps.
///
/// Classes are sorted by (element order, class size, least representative). The
/// representative of each class is its lexicographically least element, so the
/// identity class always comes first.
#[derive(Clone, Debug)]
pub struct ConjugacyClassData {
    pub representatives: Vec<Permutation>,
    pub class_sizes: Vec<usize>,
    /// Class index of each group element, indexed like `PermutationGroup::elements`.
    pub class_of: Vec<usize>,
    pub inverse_class: Vec<usize>,
    /// `power_map[t][k]` is the class of `g_k^t`, for `t` in `0..exponent`.
    pub power_map: Vec<Vec<usize>>,
    pub element_orders: Vec<usize>,
    pub exponent: usize,
    /// Element indices of each class, ascending.
    pub members: Vec<Vec<usize>>,
}

impl ConjugacyClassData {
    pub fn compute(group: &PermutationGroup) -> Self {
        let n = group.order();
        let mut raw_class = vec![usize::MAX; n];
        let mut raw_members: Vec<Vec<usize>> = Vec::new();
        let gens = group.generators();
        for start in 0..n {
            if raw_class[start] != usize::MAX {
                continue;
            }
            let c = raw_members.len();
            raw_class[start] = c;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let x = &group.elements()[i];
                for g in gens {
                    let y = x.conjugate_by(g);
                    let j = group
                        .index_of(&y)
                        .expect("group is closed under conjugation");
                    if raw_class[j] == usize::MAX {
                        raw_class[j] = c;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            raw_members.push(members);
        }

        let mut order: Vec<usize> = (0..raw_members.len()).collect();
        let orders: Vec<usize> = raw_members
            .iter()
            .map(|m| group.elements()[m[0]].order())
            .collect();
        // members[0] is the least element index, i.e. the lexicographically least image array.
        order.sort_by_key(|&c| (orders[c], raw_members[c].len(), raw_members[c][0]));
        let mut relabel = vec![0; raw_members.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }

        let members: Vec<Vec<usize>> = order.iter().map(|&c| raw_members[c].clone()).collect();
        let class_of: Vec<usize> = raw_class.iter().map(|&c| relabel[c]).collect();
        let representatives: Vec<Permutation> = members
            .iter()
            .map(|m| group.elements()[m[0]].clone())
            .collect();
        let class_sizes: Vec<usize> = members.iter().map(Vec::len).collect();
        let element_orders: Vec<usize> = order.iter().map(|&c| orders[c]).collect();
        let exponent = element_orders
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o));

        let class_index = |p: &Permutation| class_of[group.index_of(p).expect("closed")];
        let inverse_class = representatives
            .iter()
            .map(|g| class_index(&g.inverse()))
            .collect();
        let mut power_map = vec![vec![0; representatives.len()]; exponent];
        for (k, g) in representatives.iter().enumerate() {
            let mut acc = Permutation::identity(group.degree());
            for row in power_map.iter_mut() {
                row[k] = class_index(&acc);
                acc = acc.compose(g);
            }
        }

        Self {
            representatives,
            class_sizes,
            class_of,
            inverse_class,
            power_map,
            element_orders,
            exponent,
            members,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// `|C_G(g_k)|`.
    pub fn centralizer_order(&self, k: usize, group_order: usize) -> usize {
        group_order / self.class_sizes[k]
    }

    /// Class of `g^t` for arbitrary `t`.
    pub fn power_class(&self, k: usize, t: usize) -> usize {
        self.power_map[t % self.exponent][k]
    }
}
