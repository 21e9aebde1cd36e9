use super::Graph;

pub(super) fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    let deg_a = a.degrees();
    let deg_b = b.degrees();
    let mut sorted_a = deg_a.clone();
    let mut sorted_b = deg_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }

    let mut order: Vec<usize> = (0..a.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg_a[v]), v));

    let mut state = Matcher {
        a,
        b,
        deg_a: &deg_a,
        deg_b: &deg_b,
        order: &order,
        map: vec![usize::MAX; a.order()],
        used: vec![false; b.order()],
    };
    state.extend(0).then_some(state.map)
}

struct Matcher<'a> {
    a: &'a Graph,
    b: &'a Graph,
    deg_a: &'a [usize],
    deg_b: &'a [usize],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in 0..self.b.order() {
            if self.used[y] || self.deg_b[y] != self.deg_a[x] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.a.has_edge(x, u) == self.b.has_edge(y, self.map[u]));
            if !consistent {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[y] = false;
            self.map[x] = usize::MAX;
        }
        false
    }
}
