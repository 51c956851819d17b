from shared.config.settings import Settings, get_settings


def test_defaults():
    settings = Settings()
    assert settings.app_name == "weylmass"
    assert settings.find_f_bound == 32
    assert settings.decompose_max_k is None


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("WEYLMASS_FIND_F_BOUND", "10")
    monkeypatch.setenv("WEYLMASS_LOG_LEVEL", "debug")
    settings = Settings()
    assert settings.find_f_bound == 10
    assert settings.log_level == "DEBUG"


def test_comma_separated_origins():
    settings = Settings(cors_origins="http://a.test, http://b.test")
    assert settings.cors_origins == ["http://a.test", "http://b.test"]


def test_settings_are_cached():
    assert get_settings() is get_settings()


def test_uses_the_v2_configuration_api():
    assert Settings.model_config["env_prefix"] == "WEYLMASS_"
    validators = Settings.__pydantic_decorators__.field_validators
    assert {"parse_cors_origins", "parse_cors_methods", "normalize_log_level"} <= set(validators)
