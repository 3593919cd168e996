mod common;

use common::{gen, oracle};
use geocop::families;

#[test]
fn graph_counts_match_known_sequence() {
    let all = [1, 2, 4, 11, 34, 156, 1044];
    let connected = [1, 1, 2, 6, 21, 112, 853];
    for n in 1..=7 {
        assert_eq!(gen::all_graphs(n).len(), all[n - 1], "n = {n}");
        assert_eq!(gen::connected_graphs(n).len(), connected[n - 1], "n = {n}");
    }
}

#[test]
fn reference_game_on_named_graphs() {
    assert_eq!(oracle::cop_number(&families::path(5), 3), Some(1));
    assert_eq!(oracle::cop_number(&families::cycle(4), 3), Some(2));
    assert_eq!(oracle::cop_number(&families::complete(4), 3), Some(1));
    assert_eq!(oracle::cop_number(&families::cycle(5), 3), Some(2));
    assert_eq!(oracle::cop_number(&families::petersen(), 3), Some(3));
}
