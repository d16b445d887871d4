import pytest
from jsonschema import ValidationError

from drinfeld_census import CensusFactory
from drinfeld_census.census import report_to_dict
from drinfeld_census.validators import ReportValidator, load_schema


@pytest.fixture
def report_data(census_factory: CensusFactory):
    return report_to_dict(census_factory.create_report(3, 1, 1))


def test_validator_with_valid_report(report_data):
    """Test basic validation with a freshly serialized report."""
    # arrange
    validator = ReportValidator()

    # act & assert
    assert validator.validate_report(report_data) is True
    assert validator.get_last_error() == ""


def test_validator_with_invalid_type(report_data):
    """Test validation fails when a total has the wrong type."""
    # arrange
    validator = ReportValidator()
    report_data["totals"]["iso_classes"] = "six"

    # act
    result = validator.validate_report(report_data)

    # assert
    assert result is False
    assert validator.get_last_error().startswith("totals/iso_classes")


def test_validator_with_missing_required_field(report_data):
    """Test validation fails when a top-level section is missing."""
    # arrange
    validator = ReportValidator()
    del report_data["claims"]

    # act
    result = validator.validate_report(report_data)

    # assert
    assert result is False
    assert "claims" in validator.get_last_error()


def test_validator_rejects_unknown_verdict(report_data):
    """Test that a verdict outside match/mismatch/skipped is refused."""
    # arrange
    validator = ReportValidator()
    report_data["claims"][0]["verdict"] = "maybe"

    # act & assert
    assert validator.validate_report(report_data) is False


def test_validator_raise_on_error(report_data):
    """Test that raise_on_error=True raises ValidationError."""
    # arrange
    validator = ReportValidator(raise_on_error=True)
    report_data["schema_version"] = "0.9"

    # act & assert
    with pytest.raises(ValidationError):
        validator.validate_report(report_data)


def test_validator_error_clears_after_success(report_data):
    """Test that a successful validation resets the last error."""
    # arrange
    validator = ReportValidator()
    broken = dict(report_data, totals={})

    # act
    validator.validate_report(broken)
    validator.validate_report(report_data)

    # assert
    assert validator.get_last_error() == ""


def test_validator_with_invalid_schema():
    """Test that a broken schema is reported instead of raised."""
    # arrange
    validator = ReportValidator(schema={"type": "not-a-type"})

    # act
    result = validator.validate_report({})

    # assert
    assert result is False
    assert validator.get_last_error().startswith("Invalid schema")


def test_packaged_schema_loads():
    """Test that the report schema ships with the package."""
    # act
    schema = load_schema()

    # assert
    assert schema["title"] == "Census report"
    assert "claims" in schema["required"]
