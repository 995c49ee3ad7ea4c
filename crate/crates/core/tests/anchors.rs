//! Every scenario anchor must be findable in the source text it cites.

use fanocheck::cli::list_scenarios;

fn source() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../paper.md")).expect("paper.md at the workspace root")
}

#[test]
fn anchor_quotes_appear_verbatim() {
    let text = source();
    let missing: Vec<String> =
        list_scenarios().into_iter().filter(|(_, a)| !text.contains(a.quote)).map(|(n, a)| format!("{n}: {:?}", a.quote)).collect();
    assert!(missing.is_empty(), "quotes not found:\n{}", missing.join("\n"));
}

#[test]
fn anchor_labels_exist() {
    let text = source();
    for (n, a) in list_scenarios() {
        assert!(text.contains(&format!("\\label{{{}}}", a.label)), "{n}: no label {}", a.label);
    }
}

#[test]
fn quotes_are_substantial() {
    for (n, a) in list_scenarios() {
        assert!(a.quote.chars().count() >= 20, "{n}: quote too short to anchor");
    }
}
