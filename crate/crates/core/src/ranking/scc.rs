use alloc::vec::Vec;

use crate::graph::JournalGraph;
use crate::ids::JournalId;

const UNVISITED: usize = usize::MAX;

/// Strongly connected components of the journal graph (Tarjan, iterative).
///
/// Each component is sorted, and components are ordered by their smallest
/// journal. Every journal belongs to exactly one component.
pub fn strongly_connected_components(graph: &JournalGraph) -> Vec<Vec<JournalId>> {
    let n = graph.len();
    let mut adjacency: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (s, t, _) in graph.indexed_edges() {
        adjacency[s].push(t);
    }

    let mut index = alloc::vec![UNVISITED; n];
    let mut lowlink = alloc::vec![0usize; n];
    let mut on_stack = alloc::vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0;
    let mut components: Vec<Vec<usize>> = Vec::new();
    // (node, position of the next neighbour to visit)
    let mut call_stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call_stack.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (node, ref mut cursor)) = call_stack.last_mut() {
            if let Some(&next) = adjacency[node].get(*cursor) {
                *cursor += 1;
                if index[next] == UNVISITED {
                    index[next] = next_index;
                    lowlink[next] = next_index;
                    next_index += 1;
                    stack.push(next);
                    on_stack[next] = true;
                    call_stack.push((next, 0));
                } else if on_stack[next] {
                    lowlink[node] = lowlink[node].min(index[next]);
                }
                continue;
            }

            call_stack.pop();
            if let Some(&(parent, _)) = call_stack.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[node]);
            }
            if lowlink[node] == index[node] {
                let mut component = Vec::new();
                loop {
                    let member = stack.pop().expect("tarjan stack underflow");
                    on_stack[member] = false;
                    component.push(member);
                    if member == node {
                        break;
                    }
                }
                component.sort_unstable();
                components.push(component);
            }
        }
    }

    components.sort_unstable_by_key(|c| c[0]);
    let journals = graph.journals();
    components
        .into_iter()
        .map(|c| c.into_iter().map(|i| journals[i].clone()).collect())
        .collect()
}
