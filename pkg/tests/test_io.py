import numpy as np
import pytest

from hyperlab.errors import MetricValidationError, SpaceFileError
from hyperlab.families import naturals, reciprocals
from hyperlab.io import (
    format_space,
    parse_collection_text,
    parse_config_text,
    parse_map_text,
    parse_space_file,
    parse_space_text,
    write_space_file,
)


class TestSpaceFormat:
    def test_matrix_form(self):
        space = parse_space_text("matrix 2\n0 1\n1 0\n")
        assert space.n == 2
        assert space.dist[0, 1] == 1.0

    def test_points_form(self):
        space = parse_space_text("points 3 dim 1\n0\n1\n5\n")
        assert space.dist[0, 1] == 1.0
        assert space.dist[1, 2] == 4.0
        assert space.dist[0, 2] == 5.0

    def test_extra_row_flagged_with_line_number(self):
        with pytest.raises(SpaceFileError) as err:
            parse_space_text("matrix 2\n0 1\n1 0\n0 0\n")
        assert err.value.line == 4

    def test_labels_block(self):
        space = parse_space_text("matrix 2\n0 3\n3 0\nlabels\nleft\nright\n")
        assert space.labels == ("left", "right")

    def test_missing_rows(self):
        with pytest.raises(SpaceFileError):
            parse_space_text("matrix 3\n0 1 2\n1 0 1\n")

    def test_bad_header(self):
        with pytest.raises(SpaceFileError) as err:
            parse_space_text("matrices 2\n0 1\n1 0\n")
        assert err.value.line == 1

    def test_non_numeric_entry(self):
        with pytest.raises(SpaceFileError) as err:
            parse_space_text("matrix 2\n0 x\n1 0\n")
        assert err.value.line == 2

    def test_wrong_width(self):
        with pytest.raises(SpaceFileError):
            parse_space_text("points 2 dim 2\n0 0\n1\n")

    def test_label_count_mismatch(self):
        with pytest.raises(SpaceFileError):
            parse_space_text("matrix 2\n0 1\n1 0\nlabels\nonly-one\n")

    def test_invalid_metric_propagates(self):
        with pytest.raises(MetricValidationError):
            parse_space_text("matrix 2\n0 1\n2 0\n")

    def test_blank_lines_ignored(self):
        space = parse_space_text("\nmatrix 2\n\n0 1\n1 0\n\n")
        assert space.n == 2

    def test_roundtrip_exact(self, tmp_path):
        space = reciprocals(7).space
        path = tmp_path / "rec.sp"
        write_space_file(space, path)
        back = parse_space_file(path)
        assert np.array_equal(back.dist, space.dist)
        assert back.labels == space.labels

    def test_format_without_labels(self):
        text = format_space(naturals(2).space, with_labels=False)
        assert "labels" not in text


class TestCollectionFormat:
    def test_basic_lines(self):
        space = naturals(5).space
        members = parse_collection_text("0,1\n2\n3,4\n", space)
        assert [m.indices() for m in members] == [(0, 1), (2,), (3, 4)]

    def test_singletons_directive(self):
        space = naturals(3).space
        members = parse_collection_text("+singletons\n0,1,2\n", space)
        assert [m.indices() for m in members] == [(0,), (1,), (2,), (0, 1, 2)]

    def test_duplicates_dropped_first_wins(self):
        space = naturals(3).space
        members = parse_collection_text("0\n+singletons\n1\n", space)
        assert [m.indices() for m in members] == [(0,), (1,), (2,)]

    def test_bad_index(self):
        space = naturals(3).space
        with pytest.raises(SpaceFileError) as err:
            parse_collection_text("0\n7\n", space)
        assert err.value.line == 2

    def test_empty_rejected(self):
        with pytest.raises(SpaceFileError):
            parse_collection_text("\n", naturals(2).space)


class TestMapFormat:
    def test_parse(self):
        space = naturals(3).space
        mapping = parse_map_text("0 : 1\n1 : 2\n2 : 0,1\n", space)
        assert mapping.images[2].indices() == (0, 1)

    def test_missing_point(self):
        with pytest.raises(SpaceFileError):
            parse_map_text("0 : 1\n", naturals(2).space)

    def test_double_assignment(self):
        with pytest.raises(SpaceFileError) as err:
            parse_map_text("0 : 1\n0 : 0\n1 : 1\n", naturals(2).space)
        assert err.value.line == 2

    def test_bad_syntax(self):
        with pytest.raises(SpaceFileError):
            parse_map_text("0 -> 1\n1 : 0\n", naturals(2).space)


class TestConfigFormat:
    def test_parse(self):
        got = parse_config_text("# comment\nseeds = 5\n n=7\n")
        assert got == {"seeds": "5", "n": "7"}

    def test_bad_line(self):
        with pytest.raises(SpaceFileError):
            parse_config_text("just-a-word\n")
