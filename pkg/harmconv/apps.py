from django.apps import AppConfig


class HarmconvConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'harmconv'
