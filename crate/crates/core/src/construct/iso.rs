use std::collections::VecDeque;

use super::ball::CayleyBall;

/// Rooted isomorphism preserving colours and orientations. Because every slot is labelled,
/// the map is forced by propagation from the root; it only has to be checked.
pub fn rooted_colour_isomorphic(a: &CayleyBall, b: &CayleyBall) -> bool {
    if a.presentation().generators() != b.presentation().generators()
        || a.len() != b.len()
        || a.edges().len() != b.edges().len()
    {
        return false;
    }
    let ncols = a.columns().len();
    let mut map = vec![usize::MAX; a.len()];
    let mut back = vec![usize::MAX; b.len()];
    map[a.center()] = b.center();
    back[b.center()] = a.center();
    let mut queue = VecDeque::from([a.center()]);
    while let Some(u) = queue.pop_front() {
        let fu = map[u];
        for c in 0..ncols {
            match (a.neighbour(u, c), b.neighbour(fu, c)) {
                (None, None) => {}
                (Some(v), Some(fv)) => {
                    if map[v] == usize::MAX && back[fv] == usize::MAX {
                        map[v] = fv;
                        back[fv] = v;
                        queue.push_back(v);
                    } else if map[v] != fv || back[fv] != v {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    map.iter().all(|&x| x != usize::MAX)
}
