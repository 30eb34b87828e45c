use dybkit_demo::{census_text, list_text, parse_digits, verify_table_text};

#[test]
fn group_table_verifies_on_both_carriers() {
    for carrier in ["K", "cyclic"] {
        let out = verify_table_text("0110 1001", carrier).unwrap();
        assert!(out.starts_with("OK ("), "{out}");
        assert!(out.contains("unitary: yes"));
    }
    let fg = verify_table_text("01101001", "cyclic").unwrap();
    assert!(fg.contains("sigma and action bijective: yes"));
    assert!(fg.contains("face weights: 8 nonzero on 8 pairs"));
}

#[test]
fn failing_table_names_the_identity() {
    let out = verify_table_text("01100110", "K").unwrap();
    assert!(out.starts_with("FAILED: set-theoretical dynamical Yang-Baxter equation violated at ("));
}

#[test]
fn census_and_listing() {
    assert_eq!(census_text(2, "").unwrap(), "raw: 25\norbits: 17\n");
    assert_eq!(census_text(2, "unitary").unwrap().lines().next(), Some("raw: 3"));
    let listed = list_text(2, "", 100).unwrap();
    assert_eq!(listed.lines().count(), 17);
    assert_eq!(list_text(3, "", 5).unwrap().lines().count(), 5);
}

#[test]
fn bad_input_is_rejected() {
    assert_eq!(parse_digits("0120").unwrap_err().code(), "ParseError");
    assert_eq!(parse_digits("0a").unwrap_err().code(), "ParseError");
    assert_eq!(parse_digits("22222222").unwrap_err().code(), "OutOfRange");
    assert_eq!(verify_table_text("01101001", "moon").unwrap_err().code(), "ParseError");
    assert_eq!(census_text(4, "").unwrap_err().code(), "SizeLimit");
    assert_eq!(census_text(2, "shiny").unwrap_err().code(), "ParseError");
}
