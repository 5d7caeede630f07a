from django.apps import AppConfig


class BlockmovesConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.blockmoves"
