"""Setup-file grammar: sections, key/value entries, quoted blocks."""

from fractions import Fraction

import pytest

from valtwist.errors import SetupError
from valtwist.mpoly import parse_rational_function
from valtwist.ordgroup import GroupElement
from valtwist.setupfile import load_setup, parse_document, render_document
from valtwist.twist import GeneratorChoice, TableChoice


GOOD = """\
# campaign file
[valuation]
x = (1, 0)
y = (0, 1)

[ring]
subring = polynomial
lifting = constants

[campaign]
seed = 42
bound = 6
samples = 200

[choice free]
generators {
  "(1,0)" = "x"   # witness for the first axis
  "(0,1)" = "y"
}

[build]
mode = free
choice = free
"""


class TestDocumentGrammar:
    def test_sections_and_entries(self):
        doc = parse_document(GOOD)
        names = [s.name for s in doc.sections]
        assert names == ["valuation", "ring", "campaign", "choice free", "build"]
        assert doc.get("campaign").entries["seed"] == "42"
        assert doc.get("choice free").blocks["generators"]["(1,0)"] == "x"

    def test_comments_stripped_outside_quotes(self):
        doc = parse_document('[a]\nk = v # tail\nb {\n"x # y" = "z"\n}\n')
        assert doc.get("a").entries["k"] == "v"
        assert doc.get("a").blocks["b"] == {"x # y": "z"}

    def test_render_round_trip(self):
        doc = parse_document(GOOD)
        again = parse_document(render_document(doc))
        assert again == doc

    def test_entry_before_any_section(self):
        with pytest.raises(SetupError, match="line 1"):
            parse_document("k = v\n")

    def test_missing_equals(self):
        with pytest.raises(SetupError, match="line 2"):
            parse_document("[a]\njust words\n")

    def test_unterminated_block(self):
        with pytest.raises(SetupError, match="block"):
            parse_document('[a]\nb {\n"x" = "y"\n')

    def test_block_entries_may_omit_quotes(self):
        doc = parse_document("[a]\nb {\nx = y\n}\n")
        assert doc.get("a").blocks["b"] == {"x": "y"}

    def test_unterminated_quote_rejected(self):
        with pytest.raises(SetupError, match="unterminated quote"):
            parse_document('[a]\nb {\n"x = "y"\n}\n')


class TestLoadSetup:
    def test_full_file(self):
        setup = load_setup(GOOD)
        assert setup.valuation.variables() == ["x", "y"]
        assert setup.subring == "polynomial" and setup.lifting == "constants"
        assert setup.campaign.seed == 42 and setup.campaign.samples == 200
        eps = setup.choices["free"]
        assert isinstance(eps, GeneratorChoice)
        assert eps(GroupElement((1, 1))) == parse_rational_function("x*y")
        assert setup.pairs["free"].certified_trivial
        assert setup.build.mode == "free" and setup.build.choice == "free"

    def test_table_choice(self):
        text = (
            "[valuation]\nx = 1\n\n[choice t]\ntable {\n"
            '"1" = "2*x"\n"2" = "x^2"\n}\n'
        )
        setup = load_setup(text)
        eps = setup.choices["t"]
        assert isinstance(eps, TableChoice)
        assert eps(GroupElement(1)) == parse_rational_function("2*x")

    def test_extend_steps_parsed_in_order(self):
        text = (
            "[valuation]\nz = 1/6\n\n[choice base]\ngenerators {\n"
            '"1" = "64*z^6"\n}\n\n[build]\nmode = extend\nbase = base\n'
            'steps {\n"1/2" = "z^3"\n"1/6" = "z"\n}\n'
        )
        setup = load_setup(text)
        steps = setup.build.steps
        assert [str(g) for g, _ in steps] == ["1/2", "1/6"]
        assert steps[0][1] == parse_rational_function("z^3")

    def test_analyzer_only_needs_no_valuation(self):
        setup = load_setup("[analyzer]\nprimes = 2, 3\ndegree_bound = 8\n")
        assert setup.analyzer.primes == (2, 3)
        assert setup.analyzer.degree_bound == 8
        # the valuation defaults to the finite-prime weights 1/p
        assert setup.valuation.value(
            parse_rational_function("x2")
        ) == GroupElement(Fraction(1, 2))

    def test_analyzer_candidates(self):
        text = (
            "[analyzer]\nprimes = 2\ncandidates {\n"
            '"1/2" = "x2"\n"1" = "x2^2"\n}\n'
        )
        setup = load_setup(text)
        assert setup.analyzer.candidates == {
            GroupElement(Fraction(1, 2)): "x2",
            GroupElement(1): "x2^2",
        }

    def test_missing_valuation_rejected_without_analyzer(self):
        with pytest.raises(SetupError, match="valuation"):
            load_setup("[campaign]\nseed = 1\n")

    def test_bad_subring(self):
        with pytest.raises(SetupError):
            load_setup("[valuation]\nx = 1\n\n[ring]\nsubring = weird\n")

    def test_bad_lifting(self):
        with pytest.raises(SetupError):
            load_setup("[valuation]\nx = 1\n\n[ring]\nlifting = magic\n")

    def test_bad_campaign_int(self):
        with pytest.raises(SetupError, match="seed"):
            load_setup("[valuation]\nx = 1\n\n[campaign]\nseed = many\n")

    def test_choice_needs_exactly_one_block(self):
        with pytest.raises(SetupError):
            load_setup("[valuation]\nx = 1\n\n[choice c]\nkind = free\n")

    def test_invalid_table_entry_reported_as_setup_error(self):
        text = '[valuation]\nx = 1\n\n[choice t]\ntable {\n"2" = "x"\n}\n'
        with pytest.raises(SetupError):
            load_setup(text)

    def test_malformed_step_witness(self):
        text = (
            "[valuation]\nz = 1/6\n\n[choice base]\ngenerators {\n"
            '"1" = "64*z^6"\n}\n\n[build]\nmode = extend\nbase = base\n'
            'steps {\n"1/2" = "z +"\n}\n'
        )
        with pytest.raises(SetupError):
            load_setup(text)

    def test_build_mode_checked(self):
        with pytest.raises(SetupError):
            load_setup("[valuation]\nx = 1\n\n[build]\nmode = fancy\n")

    def test_build_free_needs_known_choice(self):
        with pytest.raises(SetupError):
            load_setup("[valuation]\nx = 1\n\n[build]\nmode = free\nchoice = nope\n")

    def test_campaign_defaults(self):
        setup = load_setup("[valuation]\nx = 1\n")
        assert (setup.campaign.seed, setup.campaign.bound, setup.campaign.samples) == (
            0,
            6,
            200,
        )
